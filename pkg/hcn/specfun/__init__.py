from hcn.specfun.kernels import (
    HypergeometricEval,
    gauss_2f1_unit_family,
    log_gamma,
    z_kernel,
    z_kernel_asymptote,
)

__all__ = ["HypergeometricEval", "gauss_2f1_unit_family", "log_gamma", "z_kernel", "z_kernel_asymptote"]
