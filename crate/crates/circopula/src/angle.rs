use crate::error::Error;
use std::f64::consts::TAU;

/// Width of the snap zone at the upper boundary. Reals that reduce to
/// within this distance of `2π` collapse to `0`, so the seam is never
/// represented twice.
pub(crate) const SEAM_EPS: f64 = 1e-15;

/// A direction on the circle, stored in radians within `[0, 2π)`.
///
/// Construction reduces any finite real modulo `2π`; results within
/// `1e-15` of `2π` snap to `0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Reduces `radians` into `[0, 2π)`.
    ///
    /// # Panics
    /// Panics on a non-finite input.
    pub fn new(radians: f64) -> Self {
        assert!(radians.is_finite(), "angle must be finite, got {radians}");
        let r = radians.rem_euclid(TAU);
        // rem_euclid of a tiny negative can round up to 2π itself.
        if TAU - r < SEAM_EPS {
            Angle(0.0)
        } else {
            Angle(r + 0.0)
        }
    }

    /// Radians in `[0, 2π)`.
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Arc distance to `other`, the shorter way around; in `[0, π]`.
    pub fn separation(self, other: Angle) -> f64 {
        let d = (self.0 - other.0).rem_euclid(TAU);
        d.min(TAU - d)
    }
}

/// A probability-scale value in the closed unit interval.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    /// Accepts only `0 ≤ value ≤ 1`.
    pub fn new(value: f64) -> Result<Self, Error> {
        if (0.0..=1.0).contains(&value) {
            Ok(UnitValue(value))
        } else {
            Err(Error::OutOfDomain {
                name: "unit value",
                domain: "[0, 1]",
                value,
            })
        }
    }

    /// Absorbs float dust from evaluations that are in `[0, 1]` exactly
    /// in real arithmetic but may stray a few ulp in floating point.
    pub(crate) fn saturating(value: f64) -> Self {
        debug_assert!(
            (-1e-9..=1.0 + 1e-9).contains(&value),
            "value {value} is too far outside [0, 1] to be rounding dust"
        );
        UnitValue(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}
