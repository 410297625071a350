use serde::{Deserialize, Serialize};

use crate::Complex64;

/// Registry of allowed record anchors; every anchor names one verified result.
pub mod anchors {
    macro_rules! registry {
        ($($name:ident = $key:literal;)*) => {
            $(pub const $name: &str = $key;)*
            /// Every registered anchor, in report order.
            pub const ALL: &[&str] = &[$($key),*];
        };
    }

    registry! {
        GAMMA_MODULI = "gamma-imaginary-moduli";
        BESSEL_SERIES = "bessel-series";
        BESSEL_DERIVATIVE = "bessel-derivative-identities";
        BESSEL_RECURRENCE = "bessel-three-term-recurrence";
        POISSON_REPRESENTATION = "bessel-poisson-representation";
        BESSEL_NEAR_ZERO = "bessel-near-zero-law";
        BESSEL_NEAR_BOUND = "bessel-near-zero-bound";
        BESSEL_ASYMPTOTIC = "bessel-hankel-asymptotic";
        BESSEL_ENVELOPE = "bessel-large-argument-envelope";
        WEBER_SCHAFHEITLIN = "weber-schafheitlin";
        POCHHAMMER = "pochhammer";
        HYPERGEOMETRIC = "hypergeometric-series";
        HYPERGEOMETRIC_ZERO = "hypergeometric-zero-parameter";
        BINOMIAL_SERIES = "binomial-series";
        CRITICAL_LEMMA = "hypergeometric-critical-identity";
        HYP1F2_BESSEL = "hyp1f2-bessel-integral";
        KERNEL_DEFINITION = "kernel-definition";
        KERNEL_CONSTANT = "kernel-constant";
        KERNEL_NORMALIZATION = "kernel-normalization";
        MEAN_OPERATOR = "mean-operator";
        CONTRACTION = "mean-operator-contraction";
        CENTER_VALUE = "mean-operator-center-value";
        SPHERICAL_LIMIT = "spherical-mean-limit";
        BLASCHKE_PRIVALOV = "blaschke-privalov";
        TRANSFORM_THEOREM = "kernel-transform";
        TRANSFORM_AT_ZERO = "kernel-transform-at-zero";
        BOCHNER_FORMULA = "bochner-formula";
        BY_PARTS_FORM = "kernel-transform-by-parts";
        CRUX_IDENTITY = "kernel-transform-crux-integral";
        TAIL_CLOSED_FORM = "bessel-tail-closed-form";
        TRANSFORM_DECAY = "kernel-transform-decay";
        ADMISSIBLE_P = "admissible-exponent-range";
        SPHERE_TRANSFORM = "sphere-transform";
        BOCHNER_RIESZ = "bochner-riesz-transform";
        LIMIT_S_TO_1 = "kernel-transform-sphere-limit";
        KNAPP_NORM = "knapp-norm";
        KNAPP_MASS = "knapp-mass";
        KNAPP_QUOTIENT = "knapp-quotient";
        KNAPP_NECESSITY = "knapp-necessity";
        PLANCHEREL = "plancherel-identity";
        TOMAS_STEIN_BUDGET = "tomas-stein-budget";
        THETA = "interpolation-theta";
        ANALYTIC_FAMILY = "analytic-family";
        FAMILY_CONSTANT = "analytic-family-constant";
        M1_GAMMA = "endpoint-one-gamma-bound";
        M1_GROWTH = "endpoint-one-growth";
        KZ_KERNEL = "kz-kernel";
        KZ_REDUCTION = "kz-kernel-reduction";
        KZ_GROWTH = "kz-kernel-growth";
        KZ_SPECIAL = "kz-kernel-endpoint-line";
        INVERSE_GAMMA = "inverse-gamma-bound";
        INVERSE_GAMMA_HALF = "inverse-gamma-half-bound";
        CAP_TERM = "kz-boundary-term-bound";
        TAIL_TERM = "kz-tail-integral-bound";
        M0_ENDPOINT = "endpoint-zero-bound";
        STEIN_CONSTANT = "stein-constant";
        STEIN_LIMIT = "stein-constant-limit";
    }

    pub fn is_registered(anchor: &str) -> bool {
        ALL.contains(&anchor)
    }
}

/// A computed or reference quantity; complex values keep both parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl Value {
    pub fn to_complex(self) -> Complex64 {
        match self {
            Value::Real(x) => Complex64::new(x, 0.0),
            Value::Complex { re, im } => Complex64::new(re, im),
        }
    }

    pub fn abs(self) -> f64 {
        self.to_complex().norm()
    }

    pub fn re(self) -> f64 {
        self.to_complex().re
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex { re: z.re, im: z.im }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Real(x) => write!(f, "{x:.15e}"),
            Value::Complex { re, im } => write!(f, "{re:.15e}{im:+.15e}i"),
        }
    }
}

/// How `tol` is applied when deciding `pass`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TolRule {
    /// `abs_err <= tol`.
    Absolute,
    /// `rel_err <= tol`.
    Relative,
    /// Passes when either the absolute or the relative error is within `tol`.
    Looser,
    /// One-sided: `Re computed <= Re reference + tol`.
    UpperBound,
}

/// One checked identity or inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub name: String,
    pub paper_anchor: String,
    pub computed: Value,
    pub reference: Value,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub rule: TolRule,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationRecord {
    /// Two-sided comparison of `computed` against `reference`.
    pub fn compare(
        name: impl Into<String>,
        anchor: impl Into<String>,
        computed: impl Into<Value>,
        reference: impl Into<Value>,
        tol: f64,
        rule: TolRule,
    ) -> Self {
        let computed = computed.into();
        let reference = reference.into();
        let abs_err = (computed.to_complex() - reference.to_complex()).norm();
        let rel_err = relative(abs_err, reference.abs());
        let pass = match rule {
            TolRule::Absolute => abs_err <= tol,
            TolRule::Relative => rel_err <= tol,
            TolRule::Looser => abs_err <= tol || rel_err <= tol,
            TolRule::UpperBound => computed.re() <= reference.re() + tol,
        };
        Self {
            name: name.into(),
            paper_anchor: anchor.into(),
            computed,
            reference,
            abs_err,
            rel_err,
            tol,
            rule,
            pass: pass && abs_err.is_finite(),
            note: None,
        }
    }

    /// One-sided check `computed <= bound`; `abs_err` is the excess (0 when satisfied).
    pub fn upper_bound(
        name: impl Into<String>,
        anchor: impl Into<String>,
        computed: f64,
        bound: f64,
    ) -> Self {
        let excess = (computed - bound).max(0.0);
        Self {
            name: name.into(),
            paper_anchor: anchor.into(),
            computed: Value::Real(computed),
            reference: Value::Real(bound),
            abs_err: excess,
            rel_err: relative(excess, bound.abs()),
            tol: 0.0,
            rule: TolRule::UpperBound,
            pass: computed.is_finite() && bound.is_finite() && computed <= bound,
            note: None,
        }
    }

    /// A check that could not be evaluated; always fails.
    pub fn failed(name: impl Into<String>, anchor: impl Into<String>, error: impl ToString) -> Self {
        Self {
            name: name.into(),
            paper_anchor: anchor.into(),
            computed: Value::Real(f64::NAN),
            reference: Value::Real(f64::NAN),
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tol: 0.0,
            rule: TolRule::Absolute,
            pass: false,
            note: Some(error.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn relative(abs_err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        abs_err / scale
    } else if abs_err == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}
