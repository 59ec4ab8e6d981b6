use crate::angle::{Angle, UnitValue, SEAM_EPS};
use crate::error::Error;
use std::f64::consts::{PI, TAU};

/// Absolute tolerance in `θ` for the bisection quasi-inverse.
const QUASI_INVERSE_TOL: f64 = 1e-13;

/// Distribution function of a circular random variable, anchored at the
/// zero direction: `F(0) = 0`, `F` nondecreasing, `sup F = 1`.
///
/// Discrete distributions use the left-open convention `F(θ) = P(Θ < θ)`,
/// which keeps `F(0) = 0` even when an atom sits at the origin.
pub trait CircularCdf {
    /// `F(θ)`.
    fn eval(&self, theta: Angle) -> UnitValue;

    /// Periodic extension `F̃` of `F` to `[0, 4π)`: `F(θ)` below `2π`,
    /// `F(θ − 2π) + 1` above. Nondecreasing, with `F̃(2π) = 1`.
    ///
    /// Reals in the snap sliver just below a seam evaluate as the seam's
    /// left limit (one full turn of mass), so monotonicity survives the
    /// `Angle` snap rule.
    fn extend(&self, theta: f64) -> Result<f64, Error> {
        if !theta.is_finite() || !(0.0..2.0 * TAU).contains(&theta) {
            return Err(Error::OutOfDomain {
                name: "theta",
                domain: "[0, 4pi)",
                value: theta,
            });
        }
        let (turn, rest) = if theta >= TAU {
            (1.0, theta - TAU)
        } else {
            (0.0, theta)
        };
        if TAU - rest < SEAM_EPS {
            Ok(turn + 1.0)
        } else {
            Ok(turn + self.eval(Angle::new(rest)).value())
        }
    }

    /// Quasi-inverse `F^(-1)(u) = inf{θ : F(θ) ≥ u}`.
    ///
    /// The default finds the infimum by bisection to `1e-12` in `θ`,
    /// which needs only monotonicity. When `F` reaches `u = 1` solely in
    /// the limit at `2π`, the infimum wraps to `Angle::ZERO`.
    fn quasi_inverse(&self, u: UnitValue) -> Angle {
        Angle::new(self.quasi_inverse_raw(u.value()))
    }

    /// `quasi_inverse` before wrapping: the result stays in `[0, 2π]`,
    /// so a `u` reached only in the limit comes back as `2π` itself.
    /// Used where the seam must stay distinguishable from the origin.
    fn quasi_inverse_raw(&self, u: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&u));
        if u <= 0.0 {
            return 0.0;
        }
        // Invariant: F̃(lo) < u ≤ F̃(hi).
        let mut lo = 0.0;
        let mut hi = TAU;
        while hi - lo > QUASI_INVERSE_TOL {
            let mid = 0.5 * (lo + hi);
            if self.extend(mid).expect("bisection stays in [0, 4pi)") >= u {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// The attainable value set `Ran F` for discrete distributions,
    /// sorted ascending. `None` means `F` is continuous and attains all
    /// of `[0, 1]`.
    fn attained_values(&self) -> Option<Vec<f64>> {
        None
    }
}

impl<T: CircularCdf + ?Sized> CircularCdf for &T {
    fn eval(&self, theta: Angle) -> UnitValue {
        (**self).eval(theta)
    }
    fn extend(&self, theta: f64) -> Result<f64, Error> {
        (**self).extend(theta)
    }
    fn quasi_inverse(&self, u: UnitValue) -> Angle {
        (**self).quasi_inverse(u)
    }
    fn quasi_inverse_raw(&self, u: f64) -> f64 {
        (**self).quasi_inverse_raw(u)
    }
    fn attained_values(&self) -> Option<Vec<f64>> {
        (**self).attained_values()
    }
}

/// The uniform distribution on the circle, `F(θ) = θ / 2π`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformCircular;

impl CircularCdf for UniformCircular {
    fn eval(&self, theta: Angle) -> UnitValue {
        UnitValue::saturating(theta.radians() / TAU)
    }

    fn quasi_inverse_raw(&self, u: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&u));
        u * TAU
    }
}

/// Cardioid distribution with mean direction `mu` and concentration
/// `rho`, `|rho| ≤ 1/2`.
///
/// Density `f(θ) = (1 + 2ρ cos(θ − μ)) / 2π`, so the distribution
/// function anchored at the zero direction is
/// `F(θ) = (ρ/π) sin(θ − μ) + θ/2π + (ρ/π) sin μ`.
#[derive(Debug, Clone, Copy)]
pub struct Cardioid {
    rho: f64,
    mu: Angle,
}

impl Cardioid {
    /// Requires `|rho| ≤ 1/2`; anything larger would make the density
    /// negative somewhere and the CDF non-monotone.
    pub fn new(rho: f64, mu: Angle) -> Result<Self, Error> {
        if !(rho.is_finite() && rho.abs() <= 0.5) {
            return Err(Error::InvalidParameter {
                name: "rho",
                requirement: "|rho| <= 1/2",
                value: rho,
            });
        }
        Ok(Cardioid { rho, mu })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn mu(&self) -> Angle {
        self.mu
    }

    /// `f(θ) = (1 + 2ρ cos(θ − μ)) / 2π`.
    pub fn density(&self, theta: Angle) -> f64 {
        (1.0 + 2.0 * self.rho * (theta.radians() - self.mu.radians()).cos()) / TAU
    }
}

impl CircularCdf for Cardioid {
    fn eval(&self, theta: Angle) -> UnitValue {
        let t = theta.radians();
        let c = self.rho / PI;
        // Summed left to right the two sine terms cancel exactly at t = 0.
        UnitValue::saturating(c * (t - self.mu.radians()).sin() + t / TAU + c * self.mu.radians().sin())
    }
}

/// Discrete circular distribution given by finitely many point masses.
///
/// Atoms are sorted by angle with exact duplicates merged; masses must
/// be positive and sum to 1 within `1e-12`.
#[derive(Debug, Clone)]
pub struct EmpiricalCircularCdf {
    atoms: Vec<(Angle, f64)>,
    /// Running total of mass up to and including each atom.
    cumulative: Vec<f64>,
}

impl EmpiricalCircularCdf {
    pub fn new(mut atoms: Vec<(Angle, f64)>) -> Result<Self, Error> {
        atoms.sort_by(|a, b| a.0.radians().total_cmp(&b.0.radians()));
        let mut merged: Vec<(Angle, f64)> = Vec::with_capacity(atoms.len());
        for (angle, mass) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == angle => last.1 += mass,
                _ => merged.push((angle, mass)),
            }
        }
        let sum: f64 = merged.iter().map(|&(_, m)| m).sum();
        if merged.iter().any(|&(_, m)| m <= 0.0 || m.is_nan()) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::BadMasses { sum });
        }
        let mut cumulative = Vec::with_capacity(merged.len());
        let mut acc = 0.0;
        for &(_, m) in &merged {
            acc += m;
            cumulative.push(acc);
        }
        Ok(EmpiricalCircularCdf {
            atoms: merged,
            cumulative,
        })
    }

    pub fn atoms(&self) -> &[(Angle, f64)] {
        &self.atoms
    }
}

impl CircularCdf for EmpiricalCircularCdf {
    /// `P(Θ < θ)`: mass strictly below `θ`.
    fn eval(&self, theta: Angle) -> UnitValue {
        let t = theta.radians();
        let below = self.atoms.partition_point(|&(a, _)| a.radians() < t);
        if below == 0 {
            UnitValue::ZERO
        } else {
            UnitValue::saturating(self.cumulative[below - 1])
        }
    }

    /// Exact: the first atom whose cumulative mass reaches `u`. Flat
    /// stretches of `F` resolve to their left endpoint.
    fn quasi_inverse_raw(&self, u: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&u));
        if u <= 0.0 {
            return 0.0;
        }
        let idx = self.cumulative.partition_point(|&c| c < u);
        // The mass sum is 1 within 1e-12, so u = 1 may sit a hair above
        // the last cumulative value; it still means the last atom.
        let idx = idx.min(self.atoms.len() - 1);
        self.atoms[idx].0.radians()
    }

    fn attained_values(&self) -> Option<Vec<f64>> {
        let mut values = Vec::with_capacity(self.cumulative.len() + 1);
        values.push(0.0);
        values.extend_from_slice(&self.cumulative);
        if let Some(last) = values.last_mut() {
            // Force the top of the range to exactly 1.
            *last = 1.0;
        }
        Some(values)
    }
}

/// `F` re-anchored at a new zero direction: `F_α(θ) = F̃(θ + α) − F̃(α)`.
#[derive(Debug, Clone, Copy)]
pub struct Shifted<F> {
    inner: F,
    alpha: f64,
    /// `F(α)`, subtracted from every evaluation.
    base: f64,
}

/// Re-anchors `f` so that `alpha` becomes the zero direction.
/// Shifting by `0` is the identity; shifts compose additively mod `2π`.
pub fn shift_origin<F: CircularCdf>(f: F, alpha: Angle) -> Shifted<F> {
    let base = f.eval(alpha).value();
    Shifted {
        inner: f,
        alpha: alpha.radians(),
        base,
    }
}

impl<F: CircularCdf> Shifted<F> {
    pub fn alpha(&self) -> Angle {
        Angle::new(self.alpha)
    }
}

impl<F: CircularCdf> CircularCdf for Shifted<F> {
    fn eval(&self, theta: Angle) -> UnitValue {
        let raw = self
            .inner
            .extend(theta.radians() + self.alpha)
            .expect("theta + alpha < 4pi");
        UnitValue::saturating(raw - self.base)
    }

    fn attained_values(&self) -> Option<Vec<f64>> {
        let inner = self.inner.attained_values()?;
        let mut values: Vec<f64> = inner
            .iter()
            .map(|&c| (c - self.base).rem_euclid(1.0))
            .collect();
        values.push(0.0);
        values.push(1.0);
        values.sort_by(f64::total_cmp);
        values.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        Some(values)
    }
}
