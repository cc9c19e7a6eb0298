//! Euclidean halfspaces that imitate stair-halfspaces on the stretched grid,
//! and the repair step that makes such a halfspace contain a whole line.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::depth::{min_weighted_closed_count, AffineFlat, EuclideanHalfspace};
use crate::error::{Error, Result};
use crate::grid::GridParams;
use crate::linalg;
use crate::scalar::{self, Scalar};
use crate::stair::{IndexSet, Point, StairHalfspace};

/// Integer weights `s_0..s_d`: positive exactly on the index set, summing to
/// zero, each of absolute value between 1 and `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedCoefficients {
    pub s: Vec<i64>,
}

impl SignedCoefficients {
    /// `d + 1 - |I|` on the index set and `-|I|` off it.
    pub fn canonical(set: &IndexSet) -> Self {
        let d = set.dim() as i64;
        let size = set.len() as i64;
        SignedCoefficients {
            s: (0..=set.dim())
                .map(|i| if set.contains(i) { d + 1 - size } else { -size })
                .collect(),
        }
    }

    pub fn satisfies_conditions(&self, set: &IndexSet) -> bool {
        let d = set.dim() as i64;
        self.s.len() == set.dim() + 1
            && self
                .s
                .iter()
                .enumerate()
                .all(|(i, &si)| (si > 0) == set.contains(i) && (1..=d).contains(&si.abs()))
            && self.s.iter().sum::<i64>() == 0
    }
}

/// `{x : s_0 + sum_i s_i x_i / a_i >= 0}` with canonical weights; `a` lies on its boundary.
pub fn lemma4_halfspace(
    a: &Point,
    set: &IndexSet,
) -> Result<(EuclideanHalfspace, SignedCoefficients)> {
    a.check_dim(set.dim())?;
    if let Some(i) = a.coords().iter().position(Zero::is_zero) {
        return Err(Error::InvalidParameter(format!(
            "vertex coordinate {i} is zero"
        )));
    }
    let coef = SignedCoefficients::canonical(set);
    let normal = (0..a.dim())
        .map(|i| scalar::int(coef.s[i + 1]) / &a[i])
        .collect();
    let offset = -scalar::int(coef.s[0]);
    Ok((EuclideanHalfspace::new(normal, offset)?, coef))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub checked: usize,
    pub disagreements: Vec<Point>,
}

/// Compares the stair-halfspace at grid point `a_idx` with its Euclidean
/// counterpart on every grid point that is 1-far from the vertex.
pub fn lemma4_agreement(
    params: &GridParams,
    a_idx: &[usize],
    set: &IndexSet,
) -> Result<AgreementReport> {
    let a = params.grid_point(a_idx)?;
    let stair = StairHalfspace::new(a.clone(), set.clone())?;
    let (euclid, _) = lemma4_halfspace(&a, set)?;
    let one = Scalar::one();
    let mut report = AgreementReport {
        checked: 0,
        disagreements: Vec::new(),
    };
    for x in params.points() {
        if !params.c_far(&x, &a, &one)? {
            continue;
        }
        report.checked += 1;
        if stair.contains(&x)? != euclid.contains(&x) {
            report.disagreements.push(x);
        }
    }
    Ok(report)
}

/// Moves a unit-space vertex outward for the index set: down on axes whose
/// component is in the set, up otherwise. Off-grid coordinates first round
/// outward to the grid; then `steps` grid steps follow. Results are clamped
/// to `[-1/(m-1), 1 + 1/(m-1)]`.
pub fn snap_vertex_outward(u: &Point, set: &IndexSet, m: usize, steps: usize) -> Result<Point> {
    u.check_dim(set.dim())?;
    if m < 2 {
        return Err(Error::InvalidParameter("m must be at least 2".into()));
    }
    let scale = scalar::int(m as i64 - 1);
    let lo = -scalar::int(1);
    let hi = scale.clone() + scalar::int(1);
    let coords = (0..u.dim())
        .map(|i| {
            let j = &u[i] * &scale;
            let down = set.contains(i + 1);
            let aligned = if down { j.floor() } else { j.ceil() };
            let step = scalar::int(steps as i64);
            let moved = if down { aligned - step } else { aligned + step };
            moved.max(lo.clone()).min(hi.clone()) / &scale
        })
        .collect();
    Ok(Point::new(coords))
}

/// Corners of the axis box `[lo_i, hi_i]`.
pub fn box_corners(lo: &[Scalar], hi: &[Scalar]) -> Vec<Point> {
    let d = lo.len();
    (0..1usize << d)
        .map(|mask| {
            Point::new(
                (0..d)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            hi[i].clone()
                        } else {
                            lo[i].clone()
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Vertices of `box ∩ {normal · x <= offset}`, each flagged when it lies on the hyperplane.
pub fn clipped_box_vertices(
    lo: &[Scalar],
    hi: &[Scalar],
    h: &EuclideanHalfspace,
) -> Vec<(Point, bool)> {
    let d = lo.len();
    let corners = box_corners(lo, hi);
    let f = |x: &Point| scalar::dot(&h.normal, x.coords()) - &h.offset;
    let vals: Vec<Scalar> = corners.iter().map(f).collect();
    let mut out: Vec<(Point, bool)> = corners
        .iter()
        .zip(&vals)
        .filter(|(_, v)| !v.is_positive())
        .map(|(c, v)| (c.clone(), v.is_zero()))
        .collect();
    for mask in 0..1usize << d {
        for axis in 0..d {
            if mask >> axis & 1 == 1 {
                continue;
            }
            let other = mask | 1 << axis;
            let (f0, f1) = (&vals[mask], &vals[other]);
            if (f0.is_negative() && f1.is_positive()) || (f0.is_positive() && f1.is_negative()) {
                let t = f0 / (f0 - f1);
                let c0 = &corners[mask];
                let x = &c0[axis] + t * (&corners[other][axis] - &c0[axis]);
                out.push((c0.with_coord(axis, x), true));
            }
        }
    }
    out
}

/// Among halfspaces whose boundary contains the line, the one holding the
/// fewest of `points` such that every vertex `x` satisfies `u · (x - b) <= 0`,
/// with equality only at vertices flagged as allowed.
///
/// When the vertices can be strictly separated from the line the result is
/// optimal: every vertex gets weight `|points| + 1` in a closed-count
/// minimization, and closed counts never grow under small rotations. Otherwise
/// the best of a finite candidate set is returned: the hint projected along
/// the line, coordinate directions, and hyperplanes through vertices.
pub fn separate_from_vertices(
    line: &AffineFlat,
    vertices: &[(Point, bool)],
    hint: Option<&[Scalar]>,
    points: &[Point],
) -> Result<EuclideanHalfspace> {
    let d = line.dim();
    let v = line
        .directions
        .first()
        .ok_or_else(|| Error::InvalidParameter("line without direction".into()))?;
    let b = &line.base;
    let kernel_map = linalg::nullspace(&[v.coords().to_vec()], d);
    let rel: Vec<Vec<Scalar>> = vertices
        .iter()
        .map(|(x, _)| {
            x.coords()
                .iter()
                .zip(b.coords())
                .map(|(p, q)| p - q)
                .collect()
        })
        .collect();
    let projected: Vec<Vec<Scalar>> = rel
        .iter()
        .map(|y| kernel_map.iter().map(|r| scalar::dot(r, y)).collect())
        .collect();
    let lift = |w: &[Scalar]| -> Vec<Scalar> {
        (0..d)
            .map(|j| {
                kernel_map
                    .iter()
                    .zip(w)
                    .fold(Scalar::zero(), |acc, (r, wi)| acc + &r[j] * wi)
            })
            .collect()
    };
    let through_base = |u: &[Scalar]| {
        let normal = linalg::normalize_integer(u);
        let offset = scalar::dot(&normal, b.coords());
        EuclideanHalfspace { normal, offset }
    };

    if projected.iter().all(|y| y.iter().any(|c| !c.is_zero())) {
        let heavy = points.len() + 1;
        let mut ys = Vec::new();
        let mut weights = Vec::new();
        for p in points {
            let y: Vec<Scalar> = p
                .coords()
                .iter()
                .zip(b.coords())
                .map(|(a, c)| a - c)
                .collect();
            let y: Vec<Scalar> = kernel_map.iter().map(|r| scalar::dot(r, &y)).collect();
            if y.iter().any(|c| !c.is_zero()) {
                ys.push(y);
                weights.push(1);
            }
        }
        ys.extend(projected.iter().cloned());
        weights.extend(std::iter::repeat_n(heavy, projected.len()));
        let (count, w) = min_weighted_closed_count(&ys, &weights, d - 1);
        if count < heavy {
            return Ok(through_base(&lift(&w)));
        }
    }

    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    if let Some(n) = hint {
        let vv = scalar::dot(v.coords(), v.coords());
        let t = scalar::dot(n, v.coords()) / vv;
        candidates.push(n.iter().zip(v.coords()).map(|(a, c)| a - &t * c).collect());
    }
    let e = d - 1;
    let nonzero: Vec<&Vec<Scalar>> = projected
        .iter()
        .filter(|y| y.iter().any(|c| !c.is_zero()))
        .collect();
    let mut ws: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..e {
        for sign in [1, -1] {
            let mut w = vec![Scalar::zero(); e];
            w[i] = scalar::int(sign);
            ws.push(w);
        }
    }
    for y in &nonzero {
        ws.push(y.iter().map(|c| -c.clone()).collect());
    }
    for subset in subsets(nonzero.len(), e.saturating_sub(1)) {
        let rows: Vec<Vec<Scalar>> = subset.iter().map(|&i| nonzero[i].clone()).collect();
        let ns = linalg::nullspace(&rows, e);
        if ns.len() == 1 {
            ws.push(ns[0].iter().map(|c| -c.clone()).collect());
            ws.push(ns[0].clone());
        }
    }
    candidates.extend(ws.iter().map(|w| lift(w)));

    let status = |u: &[Scalar]| -> Option<bool> {
        // None: infeasible; Some(true): strict where required; Some(false): only weak
        if u.iter().all(Zero::is_zero) {
            return None;
        }
        let mut strict = true;
        for (y, (_, allowed)) in rel.iter().zip(vertices) {
            let s = scalar::dot(u, y);
            if s.is_positive() {
                return None;
            }
            if s.is_zero() && !allowed {
                strict = false;
            }
        }
        Some(strict)
    };
    let mut feasible = Vec::new();
    let mut weak_sum = vec![Scalar::zero(); d];
    for u in candidates {
        match status(&u) {
            Some(true) => feasible.push(u),
            Some(false) => {
                weak_sum = weak_sum.iter().zip(&u).map(|(a, c)| a + c).collect();
            }
            None => {}
        }
    }
    if feasible.is_empty() && status(&weak_sum) == Some(true) {
        feasible.push(weak_sum);
    }
    feasible
        .into_iter()
        .map(|u| through_base(&u))
        .min_by_key(|h| points.iter().filter(|p| h.contains(p)).count())
        .ok_or_else(|| Error::SeparationInfeasible(format!("no separating hyperplane through {b}")))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

/// A halfspace containing the whole line whose intersection with the box lies
/// inside `h2`, chosen to hold as few of `points` as possible.
pub fn separate_line(
    line: &AffineFlat,
    h2: &EuclideanHalfspace,
    lo: &[Scalar],
    hi: &[Scalar],
    points: &[Point],
) -> Result<EuclideanHalfspace> {
    let vertices = clipped_box_vertices(lo, hi, h2);
    separate_from_vertices(line, &vertices, Some(&h2.normal), points)
}
