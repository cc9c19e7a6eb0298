//! Families of stair-halfspaces through two points that cover space a
//! constant number of times.

use serde::Serialize;

use crate::cells::AxisBox;
use crate::error::{Error, Result};
use crate::flats::StairFlat;
use crate::stair::{self, CoverCertificate, Point, StairHalfspace};

/// What a covering family was built around.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Anchor {
    Pair { p: Point, q: Point },
    Flat { flat: StairFlat },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringFamily {
    pub dim: usize,
    pub members: Vec<StairHalfspace>,
    pub delta: usize,
    pub anchor: Anchor,
}

/// `(d - 1)(d + 2) / 2`.
pub fn pair_family_size(d: usize) -> usize {
    (d - 1) * (d + 2) / 2
}

/// The two halves of the inductive construction: the extruded lower-dimensional
/// family, then the members sharing the new vertex. In the planar base case the
/// first half is empty.
pub fn cover_pair_parts(
    p: &Point,
    q: &Point,
) -> Result<(Vec<StairHalfspace>, Vec<StairHalfspace>)> {
    q.check_dim(p.dim())?;
    let d = p.dim();
    if d < 2 {
        return Err(Error::InvalidParameter("covering needs d >= 2".into()));
    }
    let (p, q) = if p.last() <= q.last() { (p, q) } else { (q, p) };
    if d == 2 {
        let a = Point::new(vec![p[0].clone(), q[1].clone()]);
        let family = if p[0] <= q[0] {
            vec![
                StairHalfspace::from_components(a.clone(), &[0, 2])?,
                StairHalfspace::from_components(a, &[1])?,
            ]
        } else {
            vec![
                StairHalfspace::from_components(a.clone(), &[0])?,
                StairHalfspace::from_components(a, &[1, 2])?,
            ]
        };
        return Ok((Vec::new(), family));
    }
    let lower = cover_pair_members(&p.project(), &q.project())?;
    let qd = q.last().clone();
    let star: Vec<StairHalfspace> = lower.iter().map(|h| h.extrude(qd.clone(), false)).collect();

    // largest 1-based axis m <= d-1 with p_m <= q_m, or 0
    let m = (1..d).rev().find(|&i| p[i - 1] <= q[i - 1]).unwrap_or(0);
    let a = p.project().lift(qd);
    let mut star_star = Vec::with_capacity(d);
    for i in 0..d {
        if i != m {
            star_star.push(StairHalfspace::from_components(a.clone(), &[i, d])?);
        }
    }
    star_star.push(StairHalfspace::from_components(a, &[m])?);
    Ok((star, star_star))
}

fn cover_pair_members(p: &Point, q: &Point) -> Result<Vec<StairHalfspace>> {
    let (mut star, star_star) = cover_pair_parts(p, q)?;
    star.extend(star_star);
    Ok(star)
}

/// A family of `(d-1)(d+2)/2` stair-halfspaces containing `p` and `q` that
/// covers `R^d` exactly `d - 1` times off the members' boundaries.
pub fn cover_pair(p: &Point, q: &Point) -> Result<CoveringFamily> {
    let members = cover_pair_members(p, q)?;
    Ok(CoveringFamily {
        dim: p.dim(),
        delta: p.dim() - 1,
        members,
        anchor: Anchor::Pair {
            p: p.clone(),
            q: q.clone(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub passed: bool,
    pub cover: CoverCertificate,
    /// Members missing `p` or `q`.
    pub containment_failures: Vec<usize>,
    /// Members whose boundary misses `p` or `q`.
    pub boundary_failures: Vec<usize>,
}

/// Checks the exact cover, that every member contains both points, and that
/// both points lie on every member's boundary.
pub fn check_family(fam: &CoveringFamily, p: &Point, q: &Point) -> Result<FamilyCertificate> {
    let cover = stair::verify_cover(&fam.members, fam.delta, &AxisBox::unbounded(fam.dim))?;
    let mut containment_failures = Vec::new();
    let mut boundary_failures = Vec::new();
    for (i, h) in fam.members.iter().enumerate() {
        if !h.contains(p)? || !h.contains(q)? {
            containment_failures.push(i);
        }
        let on_boundary = |x: &Point| stair::shs_boundary_contains(h, x, &stair::auto_gap(h, x));
        if !on_boundary(p)? || !on_boundary(q)? {
            boundary_failures.push(i);
        }
    }
    Ok(FamilyCertificate {
        passed: cover.passed && containment_failures.is_empty() && boundary_failures.is_empty(),
        cover,
        containment_failures,
        boundary_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio, Scalar};

    fn pt(c: &[(i64, i64)]) -> Point {
        Point::new(c.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn planar_base_case() {
        let p = pt(&[(3, 10), (2, 10)]);
        let q = pt(&[(7, 10), (8, 10)]);
        let fam = cover_pair(&p, &q).unwrap();
        let a = pt(&[(3, 10), (8, 10)]);
        assert_eq!(
            fam.members,
            vec![
                StairHalfspace::from_components(a.clone(), &[0, 2]).unwrap(),
                StairHalfspace::from_components(a, &[1]).unwrap(),
            ]
        );
        assert_eq!(fam.delta, 1);
        assert!(check_family(&fam, &p, &q).unwrap().passed);
        // same family with the endpoints swapped
        assert_eq!(cover_pair(&q, &p).unwrap().members, fam.members);
    }

    #[test]
    fn family_sizes() {
        let p = pt(&[(1, 7), (5, 9), (2, 3), (1, 2)]);
        let q = pt(&[(4, 5), (1, 9), (1, 3), (5, 6)]);
        for d in 2..=4 {
            let pp = Point::new(p.coords()[..d].to_vec());
            let qq = Point::new(q.coords()[..d].to_vec());
            let fam = cover_pair(&pp, &qq).unwrap();
            assert_eq!(fam.members.len(), pair_family_size(d));
            assert_eq!(fam.delta, d - 1);
            assert!(check_family(&fam, &pp, &qq).unwrap().passed, "d = {d}");
        }
        assert_eq!(pair_family_size(3), 5);
        assert_eq!(pair_family_size(4), 9);
    }

    #[test]
    fn removing_a_member_breaks_the_cover() {
        let p = pt(&[(1, 5), (3, 5), (1, 2)]);
        let q = pt(&[(2, 5), (1, 5), (9, 10)]);
        let mut fam = cover_pair(&p, &q).unwrap();
        fam.members.pop();
        let cert = check_family(&fam, &p, &q).unwrap();
        assert!(!cert.passed);
        assert!(cert.cover.violation.is_some());
    }

    #[test]
    fn lower_and_upper_parts() {
        let p = pt(&[(1, 5), (3, 5), (1, 2)]);
        let q = pt(&[(2, 5), (1, 5), (9, 10)]);
        let (star, star_star) = cover_pair_parts(&p, &q).unwrap();
        let qd = Scalar::from(q.last().clone());
        let below = AxisBox::new(vec![None; 3], vec![None, None, Some(qd.clone())]).unwrap();
        let above = AxisBox::new(vec![None, None, Some(qd)], vec![None; 3]).unwrap();
        assert!(stair::verify_cover(&star, 1, &below).unwrap().passed);
        assert!(stair::verify_cover(&star, 0, &above).unwrap().passed);
        assert!(stair::verify_cover(&star_star, 1, &below).unwrap().passed);
        assert!(stair::verify_cover(&star_star, 2, &above).unwrap().passed);
    }

    #[test]
    fn volumes_sum_to_multiplicity() {
        let p = pt(&[(1, 5), (3, 5), (1, 2)]);
        let q = pt(&[(2, 5), (1, 5), (9, 10)]);
        let fam = cover_pair(&p, &q).unwrap();
        let total = fam
            .members
            .iter()
            .map(stair::volume_in_unit_cube)
            .fold(int(0), |a, b| a + b);
        assert_eq!(total, int(2));
    }

    #[test]
    fn rejects_dimension_one() {
        assert!(cover_pair(&Point::from_ints(&[0]), &Point::from_ints(&[1])).is_err());
    }
}
