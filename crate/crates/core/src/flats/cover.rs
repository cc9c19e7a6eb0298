use serde::Serialize;

use super::{HalfStairFlat, StairFlat};
use crate::covering::{Anchor, CoveringFamily};
use crate::error::{Error, Result};
use crate::stair::{self, Point, StairHalfspace};

/// Size and multiplicity of a covering family for a stair-`k`-flat in `R^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaDelta {
    pub k: usize,
    pub d: usize,
    pub gamma: usize,
    pub delta: usize,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Δ = C(d-1, k)` and `Γ = C(d-1, k) (d+k+1) / (k+1)`; both vanish at `k = d`.
pub fn gamma_delta(k: usize, d: usize) -> Result<GammaDelta> {
    if d == 0 || k > d {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= k <= d and d >= 1, got k={k}, d={d}"
        )));
    }
    let delta = binomial(d - 1, k);
    let num = delta * (d + k + 1);
    if !num.is_multiple_of(k + 1) {
        return Err(Error::InvalidParameter(format!(
            "non-integral family size at k={k}, d={d}"
        )));
    }
    Ok(GammaDelta {
        k,
        d,
        gamma: num / (k + 1),
        delta,
    })
}

impl GammaDelta {
    /// The recursion identities linking `(k, d)` to `(k-1, d-1)` and `(k, d-1)`.
    pub fn recursion_holds(&self) -> Result<bool> {
        if self.k == 0 || self.k >= self.d {
            return Err(Error::InvalidParameter("recursion needs 1 <= k < d".into()));
        }
        let lower = gamma_delta(self.k - 1, self.d - 1)?;
        let side = gamma_delta(self.k, self.d - 1)?;
        Ok(self.gamma == lower.gamma + side.gamma
            && self.delta == lower.delta + side.delta
            && lower.gamma == self.delta + lower.delta)
    }
}

/// How a half-flat sits relative to a stair-halfspace whose boundary holds the
/// half-flat's relative boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfClass {
    /// Meets the interior.
    Interior,
    /// Lies in the boundary.
    Boundary,
    /// Not contained.
    Outside,
}

/// Classifies `h` against `hs` from its witnesses.
pub fn classify_half(h: &HalfStairFlat, hs: &StairHalfspace) -> Result<HalfClass> {
    let mut interior = false;
    let mut outside = false;
    for w in &h.witnesses {
        if !hs.contains(w)? {
            outside = true;
        } else if !stair::shs_boundary_contains(hs, w, &stair::auto_gap(hs, w))? {
            interior = true;
        }
    }
    match (interior, outside) {
        (true, true) => Err(Error::WitnessDisagreement(format!(
            "witnesses straddle {hs}"
        ))),
        (_, true) => Ok(HalfClass::Outside),
        (true, _) => Ok(HalfClass::Interior),
        _ => Ok(HalfClass::Boundary),
    }
}

/// A family of `Γ(k, d)` stair-halfspaces holding `f` in their boundaries and
/// covering `R^d` exactly `Δ(k, d)` times.
///
/// Vertical flats are rejected: a member holding points of the flat at heights
/// above its vertex must contain the whole upper component, so every member
/// covers points high enough up and the multiplicity there is `Γ > Δ`.
pub fn cover_flat(f: &StairFlat) -> Result<CoveringFamily> {
    f.validate()?;
    let members = cover_members(f)?;
    let gd = gamma_delta(f.order(), f.dim())?;
    Ok(CoveringFamily {
        dim: f.dim(),
        members,
        delta: gd.delta,
        anchor: Anchor::Flat { flat: f.clone() },
    })
}

fn single_components(a: &Point) -> Vec<StairHalfspace> {
    (0..=a.dim())
        .map(|i| StairHalfspace::from_components(a.clone(), &[i]).expect("single index is proper"))
        .collect()
}

fn cover_members(f: &StairFlat) -> Result<Vec<StairHalfspace>> {
    let d = f.dim();
    match f {
        StairFlat::Point { point } => Ok(single_components(point)),
        StairFlat::FullSpace { .. } => Ok(Vec::new()),
        StairFlat::Vertical { .. } => Err(Error::DegenerateFlat(
            "vertical stair-flats lie in no stair-halfspace boundary".into(),
        )),
        StairFlat::Horizontal { base, z } => {
            // extrude the base cover, then close the gap with half-spaces at height z
            let k = f.order();
            let a = base.sample_point().lift(z.clone());
            let mut out: Vec<StairHalfspace> = cover_members(base)?
                .iter()
                .map(|h| h.extrude(z.clone(), false))
                .collect();
            let upper = StairHalfspace::from_components(a.clone(), &[d])?;
            let lower_idx: Vec<usize> = (0..d).collect();
            let lower = StairHalfspace::from_components(a, &lower_idx)?;
            out.extend(std::iter::repeat_n(upper, gamma_delta(k, d)?.delta));
            out.extend(std::iter::repeat_n(lower, gamma_delta(k - 1, d - 1)?.delta));
            Ok(out)
        }
        StairFlat::Diagonal { half, z } => {
            let k = f.order();
            let delta = gamma_delta(k, d)?.delta;
            let delta_lower = gamma_delta(k - 1, d - 1)?.delta;
            let h_boundary = cover_members(&half.boundary)?;
            let h_carrier = cover_members(&half.carrier)?;

            let classes: Vec<HalfClass> = h_boundary
                .iter()
                .map(|h| classify_half(half, h))
                .collect::<Result<_>>()?;
            let count = |c: HalfClass| classes.iter().filter(|&&x| x == c).count();
            let (n_in, n_out) = (count(HalfClass::Interior), count(HalfClass::Outside));
            if n_out > delta || n_in > delta_lower {
                return Err(Error::PartitionInfeasible(format!(
                    "{n_in} interior and {n_out} outside members, need at most {delta_lower} and {delta}"
                )));
            }
            let mut spare = delta - n_out;
            let up: Vec<bool> = classes
                .iter()
                .map(|c| match c {
                    HalfClass::Outside => true,
                    HalfClass::Interior => false,
                    HalfClass::Boundary => {
                        let take = spare > 0;
                        spare -= take as usize;
                        take
                    }
                })
                .collect();
            let n_up = up.iter().filter(|&&u| u).count();
            if n_up != delta || up.len() - n_up != delta_lower {
                return Err(Error::PartitionInfeasible(format!(
                    "split {n_up}/{} but need {delta}/{delta_lower}",
                    up.len() - n_up
                )));
            }
            let mut out: Vec<StairHalfspace> = h_boundary
                .iter()
                .zip(&up)
                .map(|(h, &u)| h.extrude(z.clone(), u))
                .collect();
            out.extend(h_carrier.iter().map(|h| h.extrude(z.clone(), false)));
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::AxisBox;
    use crate::scalar::int;

    #[test]
    fn gamma_delta_values() {
        for d in 1..=6 {
            let g = gamma_delta(0, d).unwrap();
            assert_eq!((g.gamma, g.delta), (d + 1, 1));
        }
        let g = gamma_delta(1, 3).unwrap();
        assert_eq!((g.gamma, g.delta), (5, 2));
        let g = gamma_delta(2, 4).unwrap();
        assert_eq!((g.gamma, g.delta), (7, 3));
        let g = gamma_delta(3, 3).unwrap();
        assert_eq!((g.gamma, g.delta), (0, 0));
        assert!(gamma_delta(4, 3).is_err());
        // the two-point family sizes are the k = 1 case
        for d in 2..=6 {
            assert_eq!(gamma_delta(1, d).unwrap().gamma, (d - 1) * (d + 2) / 2);
        }
    }

    #[test]
    fn recursion_identities() {
        for d in 2..=8 {
            for k in 1..d {
                assert!(
                    gamma_delta(k, d).unwrap().recursion_holds().unwrap(),
                    "k={k} d={d}"
                );
            }
        }
    }

    #[test]
    fn point_cover() {
        let fam = cover_flat(&StairFlat::point(Point::from_ints(&[1, 2, 3]))).unwrap();
        assert_eq!(fam.members.len(), 4);
        assert_eq!(fam.delta, 1);
        assert!(
            stair::verify_cover(&fam.members, 1, &AxisBox::unbounded(3))
                .unwrap()
                .passed
        );
    }

    #[test]
    fn horizontal_cover() {
        let base = StairFlat::FullSpace { dim: 2 };
        let f = StairFlat::Horizontal {
            base: Box::new(base),
            z: int(4),
        };
        let fam = cover_flat(&f).unwrap();
        assert_eq!(fam.members.len(), gamma_delta(2, 3).unwrap().gamma);
        assert!(
            stair::verify_cover(&fam.members, fam.delta, &AxisBox::unbounded(3))
                .unwrap()
                .passed
        );

        let line = StairFlat::Horizontal {
            base: Box::new(StairFlat::Vertical {
                base: Box::new(StairFlat::point(Point::from_ints(&[1]))),
            }),
            z: int(0),
        };
        assert!(cover_flat(&line).is_err());
    }

    #[test]
    fn vertical_is_rejected() {
        let v = StairFlat::Vertical {
            base: Box::new(StairFlat::point(Point::from_ints(&[1, 1]))),
        };
        assert!(matches!(cover_flat(&v), Err(Error::DegenerateFlat(_))));
    }

    fn shs(v: &[i64], idx: &[usize]) -> StairHalfspace {
        StairHalfspace::from_components(Point::from_ints(v), idx).unwrap()
    }

    #[test]
    fn spatial_line_family_is_reproduced_member_by_member() {
        let fam = cover_flat(&crate::flats::fixtures::spatial_stair_line()).unwrap();
        let a = [2, 1, 2];
        let b = [2, 3, 2];
        assert_eq!(
            fam.members,
            vec![
                shs(&a, &[0, 3]),
                shs(&a, &[1]),
                shs(&a, &[2, 3]),
                shs(&b, &[0]),
                shs(&b, &[1, 2])
            ]
        );
        assert_eq!(fam.delta, 2);
        assert!(
            stair::verify_cover(&fam.members, 2, &AxisBox::unbounded(3))
                .unwrap()
                .passed
        );
    }

    fn check_flat_family(f: &StairFlat) {
        let fam = cover_flat(f).unwrap();
        let gd = gamma_delta(f.order(), f.dim()).unwrap();
        assert_eq!((fam.members.len(), fam.delta), (gd.gamma, gd.delta));
        let cert =
            stair::verify_cover(&fam.members, fam.delta, &AxisBox::unbounded(f.dim())).unwrap();
        assert!(cert.passed, "{cert:?}");
        for s in f.samples() {
            for h in &fam.members {
                assert!(h.contains(&s).unwrap(), "{h} misses {s}");
                assert!(
                    stair::shs_boundary_contains(h, &s, &stair::auto_gap(h, &s)).unwrap(),
                    "{s} inside {h}"
                );
            }
        }
    }

    #[test]
    fn fixture_families_verify() {
        for (name, _) in crate::flats::fixtures::NAMES {
            check_flat_family(&crate::flats::fixtures::by_name(name).unwrap());
        }
    }

    #[test]
    fn random_diagonal_families_verify() {
        for d in 2..=4 {
            for k in 1..d {
                for seed in 0..4 {
                    check_flat_family(
                        &crate::flats::generate::random_diagonal(d, k, seed).unwrap(),
                    );
                }
            }
        }
    }
}
