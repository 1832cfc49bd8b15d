"""Single-look G0 / Generalized Pareto II texture model.

Thin python layer over the compiled ``_gi0`` module: densities and
sampling, the estimator catalog (MLE, MPLE, MOM, PWM, LME, MDPD,
MGF:<stat>), goodness-of-fit statistics, threshold selection rules and
stylized influence curves.
"""

try:
    from ._gi0 import (  # type: ignore[attr-defined]
        FitResult,
        TextureParams,
        cdf,
        density,
        density_multilook,
        fit,
        gof_stat,
        log_gamma,
        loglik,
        moment,
        pwm_population,
        quantile,
        sample,
        sample_contaminated,
        seif_curve,
        select_threshold,
        stylized_sample,
    )
except ImportError:  # running against a plain build tree
    from _gi0 import (  # type: ignore[no-redef]
        FitResult,
        TextureParams,
        cdf,
        density,
        density_multilook,
        fit,
        gof_stat,
        log_gamma,
        loglik,
        moment,
        pwm_population,
        quantile,
        sample,
        sample_contaminated,
        seif_curve,
        select_threshold,
        stylized_sample,
    )

__all__ = [
    "FitResult",
    "TextureParams",
    "cdf",
    "density",
    "density_multilook",
    "fit",
    "gof_stat",
    "log_gamma",
    "loglik",
    "moment",
    "pwm_population",
    "quantile",
    "sample",
    "sample_contaminated",
    "seif_curve",
    "select_threshold",
    "stylized_sample",
]
