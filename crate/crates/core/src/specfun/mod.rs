//! Real special functions: gamma, Gauss ₂F₁ and associated Legendre P.

mod gamma;
mod hyp2f1;
mod legendre;

pub use gamma::{gamma, gamma_ratio_eval, is_gamma_pole, ln_gamma_signed, sin_pi, GammaRatio};
pub use hyp2f1::{
    hyp2f1, hyp2f1_at_one, hyp2f1_euler, hyp2f1_nonpos, hyp2f1_series, Hyp2f1, EULER_CROSSOVER,
    SERIES_MAX_TERMS, SERIES_REL_STOP,
};
pub use legendre::{legendre_p, legendre_p_excess};
