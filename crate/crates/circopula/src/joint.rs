use crate::angle::{Angle, UnitValue, SEAM_EPS};
use crate::circ_dist::{shift_origin, CircularCdf, Shifted};
use crate::copula::{CircularLowerBound, CircularUpperBound, Copula};
use crate::error::Error;
use std::f64::consts::TAU;

/// Joint distribution function of a pair of circular random variables,
/// anchored at the zero directions: `H(θ, 0) = H(0, φ) = 0`,
/// `H → 1` at `(2π⁻, 2π⁻)`, rectangle masses nonnegative.
pub trait TorusCdf {
    /// `H(θ, φ)`.
    fn joint(&self, theta: Angle, phi: Angle) -> UnitValue;

    /// Distribution of the first coordinate.
    fn margin_theta(&self) -> &dyn CircularCdf;

    /// Distribution of the second coordinate.
    fn margin_phi(&self) -> &dyn CircularCdf;

    /// Periodic extension `H̃` of `H` to `[0, 4π)²`, with values in
    /// `[0, 4]`. Writing `(k, θ′)` for the whole turns and remainder of
    /// `θ` (and `(l, φ′)` for `φ`), the four branch cases collapse to
    /// `H̃ = kl + k G(φ′) + l F(θ′) + H(θ′, φ′)`.
    ///
    /// Arguments exactly at `2π` take the upper branch, matching the
    /// left limit; the snap sliver below each seam also evaluates as
    /// the left limit so `H̃` stays 2-increasing.
    fn extend_joint(&self, theta: f64, phi: f64) -> Result<f64, Error> {
        let check = |name, x: f64| {
            if x.is_finite() && (0.0..2.0 * TAU).contains(&x) {
                Ok(())
            } else {
                Err(Error::OutOfDomain {
                    name,
                    domain: "[0, 4pi)",
                    value: x,
                })
            }
        };
        check("theta", theta)?;
        check("phi", phi)?;
        let (k, t) = split_turn(theta);
        let (l, p) = split_turn(phi);
        let (t, p) = (Angle::new(t), Angle::new(p));
        let f = self.margin_theta().eval(t).value();
        let g = self.margin_phi().eval(p).value();
        Ok(k * l + k * g + l * f + self.joint(t, p).value())
    }
}

/// Whole turns and remainder of `x ∈ [0, 4π)`. The remainder stays
/// clear of the snap sliver: reals just below a seam count as the
/// completed turn with remainder 0.
fn split_turn(x: f64) -> (f64, f64) {
    let (turn, rest) = if x >= TAU { (1.0, x - TAU) } else { (0.0, x) };
    if TAU - rest < SEAM_EPS {
        (turn + 1.0, 0.0)
    } else {
        (turn, rest)
    }
}

/// A joint distribution assembled from a copula and two circular
/// marginals: `H(θ, φ) = C(F(θ), G(φ))`.
#[derive(Debug, Clone, Copy)]
pub struct CircularJoint<C, F, G> {
    copula: C,
    marginal_theta: F,
    marginal_phi: G,
}

impl<C: Copula, F: CircularCdf, G: CircularCdf> CircularJoint<C, F, G> {
    pub fn new(copula: C, marginal_theta: F, marginal_phi: G) -> Self {
        CircularJoint {
            copula,
            marginal_theta,
            marginal_phi,
        }
    }

    pub fn copula(&self) -> &C {
        &self.copula
    }

    /// The joint re-anchored at zero directions `(α, β)`.
    pub fn shift(&self, alpha: Angle, beta: Angle) -> ShiftedJoint<'_> {
        shift_joint(self, alpha, beta)
    }
}

impl<C: Copula, F: CircularCdf, G: CircularCdf> TorusCdf for CircularJoint<C, F, G> {
    fn joint(&self, theta: Angle, phi: Angle) -> UnitValue {
        let u = self.marginal_theta.eval(theta).value();
        let v = self.marginal_phi.eval(phi).value();
        UnitValue::saturating(self.copula.value(u, v))
    }

    fn margin_theta(&self) -> &dyn CircularCdf {
        &self.marginal_theta
    }

    fn margin_phi(&self) -> &dyn CircularCdf {
        &self.marginal_phi
    }
}

/// A joint distribution observed from new zero directions `(α, β)`:
/// `H_{α,β}(θ, φ) = H̃(θ+α, φ+β) − H̃(α, φ+β) − H̃(θ+α, β) + H̃(α, β)`.
///
/// This is itself a torus distribution (with the shifted marginals), so
/// shifts can be stacked; stacking two is pointwise the single shift by
/// the summed directions.
pub struct ShiftedJoint<'a> {
    base: &'a dyn TorusCdf,
    alpha: Angle,
    beta: Angle,
    margin_t: Shifted<&'a dyn CircularCdf>,
    margin_p: Shifted<&'a dyn CircularCdf>,
    /// `H̃(α, β)`, reused by every evaluation.
    corner: f64,
}

/// Re-anchors a torus distribution at zero directions `(α, β)`.
pub fn shift_joint(base: &dyn TorusCdf, alpha: Angle, beta: Angle) -> ShiftedJoint<'_> {
    let corner = base
        .extend_joint(alpha.radians(), beta.radians())
        .expect("angles lie in [0, 2pi)");
    ShiftedJoint {
        base,
        alpha,
        beta,
        margin_t: shift_origin(base.margin_theta(), alpha),
        margin_p: shift_origin(base.margin_phi(), beta),
        corner,
    }
}

impl<'a> ShiftedJoint<'a> {
    pub fn alpha(&self) -> Angle {
        self.alpha
    }

    pub fn beta(&self) -> Angle {
        self.beta
    }

    /// Four-corner formula on raw arguments in `[0, 2π]`, so the far
    /// seam stays distinguishable from the origin. The terms are paired
    /// so that a zero argument cancels bitwise, keeping groundedness
    /// exact.
    fn eval_raw(&self, t: f64, p: f64) -> f64 {
        debug_assert!((0.0..=TAU).contains(&t) && (0.0..=TAU).contains(&p));
        let a = self.alpha.radians();
        let b = self.beta.radians();
        let at = |x, y| {
            self.base
                .extend_joint(x, y)
                .expect("shifted arguments stay in [0, 4pi)")
        };
        (at(t + a, p + b) - at(t + a, b)) - (at(a, p + b) - self.corner)
    }

    /// The copula of the shifted pair, `C_{α,β}(u, v) = H_{α,β}` at the
    /// marginal quasi-inverses of `(u, v)`.
    ///
    /// For a discrete marginal the argument must land on the marginal's
    /// attainable value lattice (within `1e-12`); anything else is
    /// rejected with the nearest attainable value.
    pub fn copula_value(&self, u: f64, v: f64) -> Result<UnitValue, Error> {
        let check = |name, x: f64| {
            if x.is_finite() && (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                Err(Error::OutOfDomain {
                    name,
                    domain: "[0, 1]",
                    value: x,
                })
            }
        };
        check("u", u)?;
        check("v", v)?;
        on_attained_lattice("u", u, self.margin_t.attained_values())?;
        on_attained_lattice("v", v, self.margin_p.attained_values())?;
        let t = self.margin_t.quasi_inverse_raw(u);
        let p = self.margin_p.quasi_inverse_raw(v);
        Ok(UnitValue::saturating(self.eval_raw(t, p)))
    }

    /// Copula values on the `points × points` lattice `{i/(points−1)}²`,
    /// row-major in `u`. Quasi-inverses are computed once per axis.
    /// Intended for continuous marginals; discrete lattices go through
    /// `copula_value` instead.
    pub fn copula_grid(&self, points: usize) -> Result<Vec<f64>, Error> {
        if points < 2 {
            return Err(Error::InvalidParameter {
                name: "points",
                requirement: "at least 2 per axis",
                value: points as f64,
            });
        }
        let step = (points - 1) as f64;
        let ts: Vec<f64> = (0..points)
            .map(|i| self.margin_t.quasi_inverse_raw(i as f64 / step))
            .collect();
        let ps: Vec<f64> = (0..points)
            .map(|j| self.margin_p.quasi_inverse_raw(j as f64 / step))
            .collect();
        let mut values = Vec::with_capacity(points * points);
        for &t in &ts {
            for &p in &ps {
                values.push(UnitValue::saturating(self.eval_raw(t, p)).value());
            }
        }
        Ok(values)
    }
}

fn on_attained_lattice(
    name: &'static str,
    x: f64,
    values: Option<Vec<f64>>,
) -> Result<(), Error> {
    let Some(vals) = values else { return Ok(()) };
    let nearest = vals
        .iter()
        .copied()
        .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))
        .unwrap_or(0.0);
    if (nearest - x).abs() > 1e-12 {
        return Err(Error::OffRange {
            name,
            value: x,
            nearest,
        });
    }
    Ok(())
}

impl TorusCdf for ShiftedJoint<'_> {
    fn joint(&self, theta: Angle, phi: Angle) -> UnitValue {
        UnitValue::saturating(self.eval_raw(theta.radians(), phi.radians()))
    }

    fn margin_theta(&self) -> &dyn CircularCdf {
        &self.margin_t
    }

    fn margin_phi(&self) -> &dyn CircularCdf {
        &self.margin_p
    }
}

/// Parameter of the upper-bound family member that the upper Fréchet
/// bound turns into under an origin shift, in terms of the marginal
/// values `F(α)` and `G(β)` at the cut.
pub fn shifted_upper_parameter(fa: f64, gb: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&fa) && (0.0..=1.0).contains(&gb));
    if fa <= gb {
        1.0 - (gb - fa)
    } else {
        fa - gb
    }
}

/// Shifted upper-bound copula evaluated from its explicit case table,
/// bypassing quasi-inverses entirely: an independent path used to
/// cross-check `copula_value` and the parameterized family.
///
/// The unit square splits at `(1−F(α), 1−G(β))` into four quadrants,
/// each with its own piecewise-linear cases; the two outer branches
/// cover `G(β) > F(α)` and `G(β) ≤ F(α)`.
pub fn shifted_upper_case_table(fa: f64, gb: f64, u: f64, v: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v));
    let left = u < 1.0 - fa;
    let low = v < 1.0 - gb;
    if gb > fa {
        let d = gb - fa;
        match (left, low) {
            (true, true) => {
                if u <= d {
                    0.0
                } else if v > u - d {
                    u - d
                } else {
                    v
                }
            }
            (true, false) => {
                if v <= 1.0 - d {
                    if u <= d {
                        0.0
                    } else {
                        u - d
                    }
                } else if u <= d {
                    if v > u + (1.0 - d) {
                        u
                    } else {
                        v - (1.0 - d)
                    }
                } else {
                    u + v - 1.0
                }
            }
            (false, true) => v,
            (false, false) => {
                if v <= u - d {
                    v
                } else if v <= 1.0 - d {
                    u - d
                } else {
                    u + v - 1.0
                }
            }
        }
    } else {
        let e = fa - gb;
        match (left, low) {
            (true, true) => {
                if v <= e {
                    0.0
                } else if v <= u + e {
                    v - e
                } else {
                    u
                }
            }
            (true, false) => u,
            (false, true) => {
                if u <= 1.0 - e {
                    if v <= e {
                        0.0
                    } else {
                        v - e
                    }
                } else if v <= e {
                    if v > u - (1.0 - e) {
                        u - (1.0 - e)
                    } else {
                        v
                    }
                } else {
                    u + v - 1.0
                }
            }
            (false, false) => {
                if v > u + e {
                    u
                } else if u <= 1.0 - e {
                    v - e
                } else {
                    u + v - 1.0
                }
            }
        }
    }
}

/// Largest absolute difference between grid values (as produced by
/// `ShiftedJoint::copula_grid`) and a copula on the same lattice.
pub fn grid_max_deviation(values: &[f64], points: usize, copula: &dyn Copula) -> f64 {
    assert_eq!(values.len(), points * points, "grid shape mismatch");
    let step = (points - 1) as f64;
    let mut worst = 0.0f64;
    for i in 0..points {
        let u = i as f64 / step;
        for j in 0..points {
            let v = j as f64 / step;
            worst = worst.max((values[i * points + j] - copula.value(u, v)).abs());
        }
    }
    worst
}

/// Finds the upper-bound family member closest to grid values, as
/// `(a, deviation)` minimizing the max deviation over `a ∈ [0, 1]`.
pub fn fit_upper_parameter(values: &[f64], points: usize) -> (f64, f64) {
    fit_parameter(values, points, |a| {
        CircularUpperBound::new(a).expect("scan stays in [0, 1]")
    })
}

/// Lower-bound counterpart of `fit_upper_parameter`. The lower family
/// has no published closed-form parameter map, so shifts of lower-bound
/// joints are classified by this fit.
pub fn fit_lower_parameter(values: &[f64], points: usize) -> (f64, f64) {
    fit_parameter(values, points, |a| {
        CircularLowerBound::new(a).expect("scan stays in [0, 1]")
    })
}

/// Coarse scan over `a`, then golden-section refinement of the bracket
/// around the best sample. The objective (max deviation over the grid)
/// is V-shaped in `a` up to quasi-inverse noise, so the bracket from a
/// 1/1024 scan contains the minimum.
fn fit_parameter<C: Copula>(
    values: &[f64],
    points: usize,
    family: impl Fn(f64) -> C,
) -> (f64, f64) {
    let dev = |a: f64| grid_max_deviation(values, points, &family(a));
    const COARSE: usize = 1024;
    let mut best_k = 0usize;
    let mut best = f64::INFINITY;
    for k in 0..=COARSE {
        let d = dev(k as f64 / COARSE as f64);
        if d < best {
            best = d;
            best_k = k;
        }
    }
    let mut lo = (best_k.saturating_sub(2)) as f64 / COARSE as f64;
    let mut hi = ((best_k + 2) as f64 / COARSE as f64).min(1.0);
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = dev(x1);
    let mut f2 = dev(x2);
    while hi - lo > 1e-11 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = dev(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = dev(x2);
        }
    }
    let a = 0.5 * (lo + hi);
    (a, dev(a))
}
