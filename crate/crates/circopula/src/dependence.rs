use crate::angle::Angle;
use crate::error::Error;
use std::f64::consts::TAU;

/// Default tolerance (radians) for the complete-dependence test:
/// tight enough that only exact synthetic relations pass.
pub const DEFAULT_FL83_TOLERANCE: f64 = 1e-9;

/// A finite set of points on the torus, deduplicated and nonempty.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportSet {
    points: Vec<(Angle, Angle)>,
}

impl SupportSet {
    /// Sorts and removes exact duplicates; an empty list is an error.
    pub fn new(mut points: Vec<(Angle, Angle)>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        points.sort_by(|a, b| {
            a.0.radians()
                .total_cmp(&b.0.radians())
                .then(a.1.radians().total_cmp(&b.1.radians()))
        });
        points.dedup();
        Ok(SupportSet { points })
    }

    pub fn points(&self) -> &[(Angle, Angle)] {
        &self.points
    }

    /// Merges coordinate values closer than `tolerance` onto the
    /// smallest value of their cluster, axis by axis. Tie detection is
    /// otherwise exact, so noisy data goes through this first.
    pub fn snapped(&self, tolerance: f64) -> SupportSet {
        let snap_axis = |values: Vec<f64>| -> Vec<f64> {
            let mut sorted: Vec<f64> = values.clone();
            sorted.sort_by(f64::total_cmp);
            sorted.dedup();
            // representative[i] = first value of the cluster containing sorted[i].
            let mut reps = Vec::with_capacity(sorted.len());
            for (i, &v) in sorted.iter().enumerate() {
                if i > 0 && v - sorted[i - 1] <= tolerance {
                    let prev: f64 = *reps.last().expect("nonempty");
                    reps.push(prev);
                } else {
                    reps.push(v);
                }
            }
            values
                .into_iter()
                .map(|v| {
                    let idx = sorted.partition_point(|&s| s < v);
                    reps[idx]
                })
                .collect()
        };
        let ts = snap_axis(self.points.iter().map(|p| p.0.radians()).collect());
        let ps = snap_axis(self.points.iter().map(|p| p.1.radians()).collect());
        SupportSet::new(
            ts.into_iter()
                .zip(ps)
                .map(|(t, p)| (Angle::new(t), Angle::new(p)))
                .collect(),
        )
        .expect("snapping preserves nonemptiness")
    }
}

/// Monotonicity direction to test for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

/// Result class of a monotonicity query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneClass {
    NonDecreasing,
    NonIncreasing,
    /// Vacuously monotone both ways (single points, single columns).
    Both,
    Neither,
}

/// Verdict plus, when monotone, a pair of zero directions realizing a
/// planar-monotone arrangement of the re-drawn points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotoneVerdict {
    pub direction: MonotoneClass,
    pub witness_cut: Option<(Angle, Angle)>,
}

/// Planar monotonicity of a finite point set: nondecreasing means
/// `x < u` implies `y ≤ v` over all point pairs. Points sharing an `x`
/// constrain nothing among themselves.
pub fn is_planar_monotone(points: &[(f64, f64)], direction: Direction) -> bool {
    let mut sorted: Vec<(f64, f64)> = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut i = 0;
    let mut bound = match direction {
        Direction::NonDecreasing => f64::NEG_INFINITY,
        Direction::NonIncreasing => f64::INFINITY,
    };
    while i < sorted.len() {
        let x = sorted[i].0;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        while i < sorted.len() && sorted[i].0 == x {
            lo = lo.min(sorted[i].1);
            hi = hi.max(sorted[i].1);
            i += 1;
        }
        match direction {
            Direction::NonDecreasing => {
                if bound > lo {
                    return false;
                }
                bound = bound.max(hi);
            }
            Direction::NonIncreasing => {
                if bound < hi {
                    return false;
                }
                bound = bound.min(lo);
            }
        }
    }
    true
}

/// Points bucketed by exact θ equality, ascending.
fn theta_groups(points: &[(Angle, Angle)]) -> Vec<(f64, Vec<f64>)> {
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .map(|&(t, p)| (t.radians(), p.radians()))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut groups: Vec<(f64, Vec<f64>)> = Vec::new();
    for (t, p) in pts {
        match groups.last_mut() {
            Some(last) if last.0 == t => last.1.push(p),
            _ => groups.push((t, vec![p])),
        }
    }
    groups
}

/// Checks one candidate cut: rotate the θ-order to start at group `k`
/// and re-measure φ from `beta`, then run the planar groupwise check.
fn cut_is_monotone(groups: &[(f64, Vec<f64>)], k: usize, beta: f64, direction: Direction) -> bool {
    let m = groups.len();
    let mut bound = match direction {
        Direction::NonDecreasing => f64::NEG_INFINITY,
        Direction::NonIncreasing => f64::INFINITY,
    };
    for i in 0..m {
        let (_, phis) = &groups[(k + i) % m];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &p in phis {
            let y = (p - beta).rem_euclid(TAU);
            lo = lo.min(y);
            hi = hi.max(y);
        }
        match direction {
            Direction::NonDecreasing => {
                if bound > lo {
                    return false;
                }
                bound = bound.max(hi);
            }
            Direction::NonIncreasing => {
                if bound < hi {
                    return false;
                }
                bound = bound.min(lo);
            }
        }
    }
    true
}

/// Decides whether some pair of zero directions re-draws the set as a
/// planar-monotone arrangement, returning a witness pair when one
/// exists.
///
/// Candidate cuts need only be checked at present coordinate values:
/// any valid cut slides counterclockwise onto the next present value
/// without changing the re-drawn order. For a valid cut the smallest
/// re-measured φ must occur in the first re-drawn θ-group
/// (nondecreasing) or the last one (nonincreasing), so β candidates
/// come from that group alone, giving one candidate pair per point.
pub fn circular_monotone(support: &SupportSet, direction: Direction) -> MonotoneVerdict {
    let groups = theta_groups(support.points());
    let m = groups.len();
    for k in 0..m {
        let source = match direction {
            Direction::NonDecreasing => k,
            Direction::NonIncreasing => (k + m - 1) % m,
        };
        for &beta in &groups[source].1 {
            if cut_is_monotone(&groups, k, beta, direction) {
                let class = match direction {
                    Direction::NonDecreasing => MonotoneClass::NonDecreasing,
                    Direction::NonIncreasing => MonotoneClass::NonIncreasing,
                };
                return MonotoneVerdict {
                    direction: class,
                    witness_cut: Some((Angle::new(groups[k].0), Angle::new(beta))),
                };
            }
        }
    }
    MonotoneVerdict {
        direction: MonotoneClass::Neither,
        witness_cut: None,
    }
}

/// Tests both directions and folds the outcome into one verdict; the
/// witness of a `Both` verdict is the nondecreasing one.
pub fn classify_support(support: &SupportSet) -> MonotoneVerdict {
    let nd = circular_monotone(support, Direction::NonDecreasing);
    let ni = circular_monotone(support, Direction::NonIncreasing);
    match (nd.witness_cut, ni.witness_cut) {
        (Some(w), Some(_)) => MonotoneVerdict {
            direction: MonotoneClass::Both,
            witness_cut: Some(w),
        },
        (Some(w), None) => MonotoneVerdict {
            direction: MonotoneClass::NonDecreasing,
            witness_cut: Some(w),
        },
        (None, Some(w)) => MonotoneVerdict {
            direction: MonotoneClass::NonIncreasing,
            witness_cut: Some(w),
        },
        (None, None) => MonotoneVerdict {
            direction: MonotoneClass::Neither,
            witness_cut: None,
        },
    }
}

/// Sign of a complete-dependence relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssociationSign {
    Positive,
    Negative,
}

/// Complete-dependence test: detects `φ ≡ θ + α₀ (mod 2π)` (positive)
/// or `φ ≡ −θ + α₀ (mod 2π)` (negative) within `tolerance` radians.
/// `α₀` is estimated as the circular mean of the residues; positive is
/// tried first. Returns `None` when neither relation fits.
pub fn fl83_test(support: &SupportSet, tolerance: f64) -> Option<(AssociationSign, Angle)> {
    let fit = |residues: Vec<Angle>| -> Option<Angle> {
        let (s, c) = residues.iter().fold((0.0, 0.0), |(s, c), r| {
            (s + r.radians().sin(), c + r.radians().cos())
        });
        let mean = Angle::new(s.atan2(c));
        residues
            .iter()
            .all(|r| r.separation(mean) <= tolerance)
            .then_some(mean)
    };
    let positive: Vec<Angle> = support
        .points()
        .iter()
        .map(|&(t, p)| Angle::new(p.radians() - t.radians()))
        .collect();
    if let Some(alpha0) = fit(positive) {
        return Some((AssociationSign::Positive, alpha0));
    }
    let negative: Vec<Angle> = support
        .points()
        .iter()
        .map(|&(t, p)| Angle::new(p.radians() + t.radians()))
        .collect();
    fit(negative).map(|alpha0| (AssociationSign::Negative, alpha0))
}
