use crate::error::Error;

/// A bivariate copula on `[0, 1]²`.
///
/// Implementations are total on the closed square; callers validate
/// inputs before crossing the API boundary. Boundary values are exact:
/// `C(u, 0) = C(0, v) = 0`, `C(u, 1) = u`, `C(1, v) = v` hold bitwise.
pub trait Copula {
    /// `C(u, v)`.
    fn value(&self, u: f64, v: f64) -> f64;

    /// Mass assigned to the rectangle `[u1, u2] × [v1, v2]`:
    /// `C(u2,v2) − C(u2,v1) − C(u1,v2) + C(u1,v1)`.
    ///
    /// Returned as computed; rounding can leave dust of order `1e-16`
    /// below zero, which callers clamp when reporting.
    fn volume(&self, u1: f64, u2: f64, v1: f64, v2: f64) -> Result<f64, Error> {
        let ordered = |a: f64, b: f64| a.is_finite() && b.is_finite() && 0.0 <= a && a <= b && b <= 1.0;
        if !(ordered(u1, u2) && ordered(v1, v2)) {
            return Err(Error::BadRectangle { u1, u2, v1, v2 });
        }
        Ok(self.value(u2, v2) - self.value(u2, v1) - self.value(u1, v2) + self.value(u1, v1))
    }
}

impl<T: Copula + ?Sized> Copula for &T {
    fn value(&self, u: f64, v: f64) -> f64 {
        (**self).value(u, v)
    }
}

/// Shared boundary shortcut. Piecewise formulas reproduce the margins
/// only up to rounding; returning them directly keeps the boundary
/// identities exact for every copula in this module.
#[inline]
fn margin_value(u: f64, v: f64) -> Option<f64> {
    debug_assert!((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v));
    if u == 0.0 || v == 0.0 {
        Some(0.0)
    } else if u == 1.0 {
        Some(v)
    } else if v == 1.0 {
        Some(u)
    } else {
        None
    }
}

/// The independence copula `Π(u, v) = uv`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Independence;

impl Copula for Independence {
    fn value(&self, u: f64, v: f64) -> f64 {
        margin_value(u, v).unwrap_or(u * v)
    }
}

/// The upper Fréchet bound `M(u, v) = min(u, v)`, the copula of
/// comonotone variables.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrechetUpper;

impl Copula for FrechetUpper {
    fn value(&self, u: f64, v: f64) -> f64 {
        u.min(v)
    }
}

/// The lower Fréchet bound `W(u, v) = max(u + v − 1, 0)`, the copula of
/// countermonotone variables.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrechetLower;

impl Copula for FrechetLower {
    fn value(&self, u: f64, v: f64) -> f64 {
        margin_value(u, v).unwrap_or_else(|| (u + v - 1.0).max(0.0))
    }
}

/// The tightest upper bound attainable by circular random vectors whose
/// joint distribution respects both anchored margins; `a ∈ [0, 1]` is
/// the vertical offset of the supporting segments.
///
/// All mass sits on two parallel diagonal segments: `(0, a) → (1−a, 1)`
/// carrying mass `1 − a` and `(1−a, 0) → (1, a)` carrying mass `a`.
/// `a = 0` and `a = 1` both reduce to `min(u, v)`.
#[derive(Debug, Clone, Copy)]
pub struct CircularUpperBound {
    a: f64,
    /// `1 − a`, precomputed so region arithmetic stays nonnegative.
    comp: f64,
}

impl CircularUpperBound {
    pub fn new(a: f64) -> Result<Self, Error> {
        if !(a.is_finite() && (0.0..=1.0).contains(&a)) {
            return Err(Error::InvalidParameter {
                name: "a",
                requirement: "0 <= a <= 1",
                value: a,
            });
        }
        Ok(CircularUpperBound { a, comp: 1.0 - a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

impl Copula for CircularUpperBound {
    fn value(&self, u: f64, v: f64) -> f64 {
        if let Some(m) = margin_value(u, v) {
            return m;
        }
        if u <= self.comp && v >= self.a {
            u.min(v - self.a)
        } else if u >= self.comp && v <= self.a {
            v.min(u - self.comp)
        } else {
            (u + v - 1.0).max(0.0)
        }
    }
}

/// The tightest lower bound attainable by circular random vectors whose
/// joint distribution respects both anchored margins; `a ∈ [0, 1]`
/// locates the corner squares.
///
/// All mass sits on two antidiagonal segments: `(0, a) → (a, 0)`
/// carrying mass `a` and `(a, 1) → (1, a)` carrying mass `1 − a`.
/// `a = 0` and `a = 1` both reduce to `max(u + v − 1, 0)`.
#[derive(Debug, Clone, Copy)]
pub struct CircularLowerBound {
    a: f64,
}

impl CircularLowerBound {
    pub fn new(a: f64) -> Result<Self, Error> {
        if !(a.is_finite() && (0.0..=1.0).contains(&a)) {
            return Err(Error::InvalidParameter {
                name: "a",
                requirement: "0 <= a <= 1",
                value: a,
            });
        }
        Ok(CircularLowerBound { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

impl Copula for CircularLowerBound {
    fn value(&self, u: f64, v: f64) -> f64 {
        if let Some(m) = margin_value(u, v) {
            return m;
        }
        if u <= self.a && v <= self.a {
            (u + v - self.a).max(0.0)
        } else if u >= self.a && v >= self.a {
            (u + v - 1.0).max(self.a)
        } else {
            u.min(v)
        }
    }
}

/// Convex mixture of the circular bounds and independence with weights
/// driven by a single association parameter `γ ∈ [−1, 1]`:
/// `γ²(1+γ)/2` on the upper bound, `1 − γ²` on independence, and
/// `γ²(1−γ)/2` on the lower bound.
///
/// `γ = 1` is pure upper bound, `γ = −1` pure lower bound, `γ = 0`
/// independence; the weight split keeps the mixture continuous in `γ`.
#[derive(Debug, Clone, Copy)]
pub struct MardiaMixture {
    gamma: f64,
    upper: CircularUpperBound,
    lower: CircularLowerBound,
    w_plus: f64,
    w_indep: f64,
    w_minus: f64,
}

impl MardiaMixture {
    pub fn new(gamma: f64, a: f64, b: f64) -> Result<Self, Error> {
        if !(gamma.is_finite() && (-1.0..=1.0).contains(&gamma)) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                requirement: "-1 <= gamma <= 1",
                value: gamma,
            });
        }
        let g2 = gamma * gamma;
        Ok(MardiaMixture {
            gamma,
            upper: CircularUpperBound::new(a)?,
            lower: CircularLowerBound::new(b)?,
            w_plus: g2 * (1.0 + gamma) / 2.0,
            w_indep: 1.0 - g2,
            w_minus: g2 * (1.0 - gamma) / 2.0,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn upper(&self) -> &CircularUpperBound {
        &self.upper
    }

    pub fn lower(&self) -> &CircularLowerBound {
        &self.lower
    }

    /// Mixture weights `(upper, independence, lower)`; nonnegative and
    /// summing to 1 up to rounding.
    pub fn weights(&self) -> (f64, f64, f64) {
        (self.w_plus, self.w_indep, self.w_minus)
    }
}

impl Copula for MardiaMixture {
    fn value(&self, u: f64, v: f64) -> f64 {
        if let Some(m) = margin_value(u, v) {
            return m;
        }
        self.w_plus * self.upper.value(u, v)
            + self.w_indep * (u * v)
            + self.w_minus * self.lower.value(u, v)
    }
}
