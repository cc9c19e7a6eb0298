//! Exact Tukey depth for small point sets, with witnessing halfspaces.

use std::collections::BTreeSet;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{self, Scalar};
use crate::stair::Point;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some(first) = points.first() {
            for p in &points {
                p.check_dim(first.dim())?;
            }
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Point::dim)
    }
}

/// `{x : normal · x >= offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclideanHalfspace {
    #[serde(with = "scalar::serde_scalars")]
    pub normal: Vec<Scalar>,
    #[serde(with = "scalar::serde_scalar")]
    pub offset: Scalar,
}

impl EuclideanHalfspace {
    pub fn new(normal: Vec<Scalar>, offset: Scalar) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::InvalidParameter("zero normal".into()));
        }
        Ok(EuclideanHalfspace { normal, offset })
    }

    pub fn contains(&self, x: &Point) -> bool {
        scalar::dot(&self.normal, x.coords()) >= self.offset
    }

    /// Whether `x` is on the bounding hyperplane.
    pub fn on_boundary(&self, x: &Point) -> bool {
        scalar::dot(&self.normal, x.coords()) == self.offset
    }
}

/// `base + span(directions)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFlat {
    pub base: Point,
    pub directions: Vec<Point>,
}

impl AffineFlat {
    pub fn new(base: Point, directions: Vec<Point>) -> Result<Self> {
        let d = base.dim();
        for v in &directions {
            v.check_dim(d)?;
        }
        if directions.len() >= d {
            return Err(Error::InvalidParameter(format!(
                "a proper flat in R^{d} has at most {} directions",
                d - 1
            )));
        }
        let rows: Vec<Vec<Scalar>> = directions.iter().map(|v| v.coords().to_vec()).collect();
        if linalg::rank(&rows) != rows.len() {
            return Err(Error::InvalidParameter(
                "directions are linearly dependent".into(),
            ));
        }
        Ok(AffineFlat { base, directions })
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Rows of an exact linear map whose kernel is the span of the directions.
    pub fn projection_rows(&self) -> Vec<Vec<Scalar>> {
        let rows: Vec<Vec<Scalar>> = self
            .directions
            .iter()
            .map(|v| v.coords().to_vec())
            .collect();
        linalg::nullspace(&rows, self.dim())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthResult {
    pub depth: usize,
    /// A closed halfspace containing the query that holds exactly `depth` points.
    pub witness: EuclideanHalfspace,
}

pub fn halfspace_count(s: &PointSet, h: &EuclideanHalfspace) -> usize {
    s.points.iter().filter(|p| h.contains(p)).count()
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    scalar::dot(a, b)
}

fn unit(dim: usize, i: usize, sign: i64) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = scalar::int(sign);
    v
}

/// Minimum over nonzero `u` of `#{y : u · y >= 0}` for nonzero vectors `y`,
/// with a direction attaining it.
pub fn min_closed_count(ys: &[Vec<Scalar>], dim: usize) -> (usize, Vec<Scalar>) {
    min_weighted_closed_count(ys, &vec![1; ys.len()], dim)
}

/// [`min_closed_count`] where vector `i` counts `weights[i]` times.
pub fn min_weighted_closed_count(
    ys: &[Vec<Scalar>],
    weights: &[usize],
    dim: usize,
) -> (usize, Vec<Scalar>) {
    assert_eq!(ys.len(), weights.len(), "one weight per vector");
    if ys.is_empty() {
        return (0, unit(dim, 0, 1));
    }
    let total: usize = weights.iter().sum();
    // work in coordinates of span(ys) when it is a proper subspace
    let mut m = ys.to_vec();
    let pivots = linalg::rref(&mut m);
    if pivots.len() < dim {
        let reduced: Vec<Vec<Scalar>> = ys
            .iter()
            .map(|y| pivots.iter().map(|&j| y[j].clone()).collect())
            .collect();
        let (count, w) = min_weighted_closed_count(&reduced, weights, pivots.len());
        let mut u = vec![Scalar::zero(); dim];
        for (wi, &j) in w.into_iter().zip(&pivots) {
            u[j] = wi;
        }
        return (count, u);
    }
    if dim == 1 {
        let pos: usize = ys
            .iter()
            .zip(weights)
            .filter(|(y, _)| y[0].is_positive())
            .map(|(_, w)| w)
            .sum();
        let neg = total - pos;
        return if pos <= neg {
            (pos, unit(1, 0, 1))
        } else {
            (neg, unit(1, 0, -1))
        };
    }
    // signs are all that matter, so count with primitive integer vectors
    let ys_int: Vec<Vec<BigInt>> = ys
        .iter()
        .map(|y| integer_entries(&linalg::normalize_integer(y)))
        .collect();
    let mut best = (total + 1, unit(dim, 0, 1));
    for u0 in candidate_normals(ys, dim) {
        let u0_int = integer_entries(&u0);
        let mut pos = 0;
        let mut on_plane = Vec::new();
        let mut on_weights = Vec::new();
        for ((y, yi), &w) in ys.iter().zip(&ys_int).zip(weights) {
            let s = int_dot(&u0_int, yi);
            if s.is_positive() {
                pos += w;
                if pos >= best.0 {
                    break;
                }
            } else if s.is_zero() {
                on_plane.push(y.clone());
                on_weights.push(w);
            }
        }
        if pos >= best.0 {
            continue;
        }
        let (extra, u) = if on_plane.is_empty() {
            (0, u0)
        } else {
            let (extra, w) = refine_on_plane(&u0, &on_plane, &on_weights, dim);
            (extra, combine(&u0, &w, ys))
        };
        if pos + extra < best.0 {
            best = (pos + extra, u);
            if best.0 == 0 {
                break;
            }
        }
    }
    best
}

fn integer_entries(v: &[Scalar]) -> Vec<BigInt> {
    v.iter().map(|c| c.to_integer()).collect()
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// Solves the sub-problem for the points on `u0`'s hyperplane, with the
// hyperplane parametrized by dropping a coordinate where `u0` is nonzero.
fn refine_on_plane(
    u0: &[Scalar],
    on_plane: &[Vec<Scalar>],
    weights: &[usize],
    dim: usize,
) -> (usize, Vec<Scalar>) {
    let j = u0
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero normal");
    let projected: Vec<Vec<Scalar>> = on_plane
        .iter()
        .map(|y| {
            y.iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, c)| c.clone())
                .collect()
        })
        .collect();
    let (extra, w) = min_weighted_closed_count(&projected, weights, dim - 1);
    let mut lifted = w;
    lifted.insert(j, Scalar::zero());
    (extra, lifted)
}

// `u0 + eps * w` with `eps` small enough that no sign off the hyperplane flips.
fn combine(u0: &[Scalar], w: &[Scalar], ys: &[Vec<Scalar>]) -> Vec<Scalar> {
    let eps = ys
        .iter()
        .filter_map(|y| {
            let a = dot(u0, y);
            let b = dot(w, y);
            (!a.is_zero() && !b.is_zero()).then(|| a.abs() / b.abs())
        })
        .min()
        .map(|r| r / scalar::int(2))
        .unwrap_or_else(Scalar::one);
    u0.iter().zip(w).map(|(a, b)| a + &eps * b).collect()
}

fn canonical_direction(v: &[Scalar]) -> Vec<Scalar> {
    let mut n = linalg::normalize_integer(v);
    if n.iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative())
    {
        n.iter_mut().for_each(|c| *c = -c.clone());
    }
    n
}

/// Normals of hyperplanes spanned by `dim - 1` independent vectors, both signs,
/// plus the axis directions.
fn candidate_normals(ys: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    let lines: Vec<Vec<Scalar>> = ys
        .iter()
        .map(|y| canonical_direction(y))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut normals = BTreeSet::new();
    let mut idx: Vec<usize> = (0..dim - 1).collect();
    if lines.len() >= dim - 1 {
        loop {
            let rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| lines[i].clone()).collect();
            let ns = linalg::nullspace(&rows, dim);
            if ns.len() == 1 {
                normals.insert(canonical_direction(&ns[0]));
            }
            if !next_combination(&mut idx, lines.len()) {
                break;
            }
        }
    }
    for i in 0..dim {
        normals.insert(unit(dim, i, 1));
    }
    normals
        .into_iter()
        .flat_map(|n| {
            let neg: Vec<Scalar> = n.iter().map(|c| -c.clone()).collect();
            [n, neg]
        })
        .collect()
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Tukey depth of `x` in `s` and a halfspace attaining it.
pub fn tukey_depth(s: &PointSet, x: &Point) -> Result<DepthResult> {
    let d = x.dim();
    let mut zeros = 0;
    let mut ys = Vec::new();
    for p in &s.points {
        p.check_dim(d)?;
        let y: Vec<Scalar> = p
            .coords()
            .iter()
            .zip(x.coords())
            .map(|(a, b)| a - b)
            .collect();
        if y.iter().all(Zero::is_zero) {
            zeros += 1;
        } else {
            ys.push(y);
        }
    }
    let (count, u) = min_closed_count(&ys, d);
    let offset = dot(&u, x.coords());
    Ok(DepthResult {
        depth: zeros + count,
        witness: EuclideanHalfspace { normal: u, offset },
    })
}

/// Depth of an affine flat: the Tukey depth of its image under a linear map
/// that collapses the flat to a point.
pub fn flat_depth(s: &PointSet, f: &AffineFlat) -> Result<DepthResult> {
    let rows = f.projection_rows();
    let image = |p: &Point| -> Result<Point> {
        p.check_dim(f.dim())?;
        Ok(Point::new(
            rows.iter().map(|r| dot(r, p.coords())).collect(),
        ))
    };
    let projected = PointSet {
        points: s.points.iter().map(image).collect::<Result<_>>()?,
    };
    let inner = tukey_depth(&projected, &image(&f.base)?)?;
    let normal: Vec<Scalar> = (0..f.dim())
        .map(|j| {
            rows.iter()
                .zip(&inner.witness.normal)
                .fold(Scalar::zero(), |acc, (r, w)| acc + &r[j] * w)
        })
        .collect();
    let offset = dot(&normal, f.base.coords());
    Ok(DepthResult {
        depth: inner.depth,
        witness: EuclideanHalfspace { normal, offset },
    })
}

/// `d + 1` clouds of `cloud_size` points around the origin and the unit
/// vectors; point `j` of a cloud is shifted by `radius * j / cloud_size` along
/// axis `j mod d`.
pub fn cloud_set(d: usize, cloud_size: usize, radius: &Scalar) -> Result<PointSet> {
    if d == 0 || cloud_size == 0 {
        return Err(Error::InvalidParameter(
            "need d >= 1 and a nonempty cloud".into(),
        ));
    }
    if radius.is_negative() {
        return Err(Error::InvalidParameter("radius must be nonnegative".into()));
    }
    let mut points = Vec::with_capacity((d + 1) * cloud_size);
    for anchor in cloud_anchors(d) {
        for j in 0..cloud_size {
            let shift = radius * scalar::ratio(j as i64, cloud_size as i64);
            let axis = j % d;
            points.push(anchor.with_coord(axis, &anchor[axis] + shift));
        }
    }
    Ok(PointSet { points })
}

/// The origin followed by the unit vectors.
pub fn cloud_anchors(d: usize) -> Vec<Point> {
    let mut out = vec![Point::new(vec![Scalar::zero(); d])];
    for i in 0..d {
        out.push(Point::new(unit(d, i, 1)));
    }
    out
}

/// Query points for the cloud bound: every cloud point, each cloud's centroid,
/// and the centroid of the whole set.
pub fn cloud_candidates(s: &PointSet, d: usize, cloud_size: usize) -> Vec<Point> {
    let centroid = |pts: &[Point]| -> Point {
        let n = scalar::int(pts.len() as i64);
        Point::new(
            (0..d)
                .map(|i| pts.iter().fold(Scalar::zero(), |a, p| a + &p[i]) / &n)
                .collect(),
        )
    };
    let mut out = s.points.clone();
    for cloud in s.points.chunks(cloud_size) {
        out.push(centroid(cloud));
    }
    out.push(centroid(&s.points));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn set(pts: &[&[i64]]) -> PointSet {
        PointSet::new(pts.iter().map(|c| Point::from_ints(c)).collect()).unwrap()
    }

    #[test]
    fn weights_steer_the_minimum() {
        let ys: Vec<Vec<Scalar>> = [[1, 0], [-1, 1], [-1, -1]]
            .iter()
            .map(|c| vec![int(c[0]), int(c[1])])
            .collect();
        assert_eq!(min_closed_count(&ys, 2).0, 1);
        let (count, u) = min_weighted_closed_count(&ys, &[1, 9, 9], 2);
        assert_eq!(count, 1);
        assert!(dot(&u, &ys[0]) >= Scalar::zero());
        assert!(dot(&u, &ys[1]) < Scalar::zero() && dot(&u, &ys[2]) < Scalar::zero());
    }

    fn square() -> PointSet {
        set(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    fn check_witness(s: &PointSet, x: &Point, r: &DepthResult) {
        assert!(r.witness.contains(x));
        assert_eq!(halfspace_count(s, &r.witness), r.depth);
    }

    #[test]
    fn halfspace_counts() {
        let h = EuclideanHalfspace::new(vec![int(1), int(1)], int(1)).unwrap();
        assert_eq!(halfspace_count(&square(), &h), 3);
        let h = EuclideanHalfspace::new(vec![int(1), int(1)], int(3)).unwrap();
        assert_eq!(halfspace_count(&square(), &h), 0);
        assert!(EuclideanHalfspace::new(vec![int(0), int(0)], int(0)).is_err());
    }

    #[test]
    fn one_dimensional_depth() {
        let s = set(&[&[1], &[2], &[3], &[4], &[5]]);
        let x = Point::from_ints(&[2]);
        let r = tukey_depth(&s, &x).unwrap();
        assert_eq!(r.depth, 2);
        check_witness(&s, &x, &r);
    }

    #[test]
    fn planar_examples() {
        let tri = set(&[&[0, 0], &[4, 0], &[0, 4]]);
        let x = Point::from_ints(&[0, 0]);
        let r = tukey_depth(&tri, &x).unwrap();
        assert_eq!(r.depth, 1);
        check_witness(&tri, &x, &r);

        let c = Point::new(vec![ratio(1, 2), ratio(1, 2)]);
        let r = tukey_depth(&square(), &c).unwrap();
        assert_eq!(r.depth, 2);
        check_witness(&square(), &c, &r);
    }

    #[test]
    fn degenerate_collinear_set() {
        let s = set(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3]]);
        let x = Point::from_ints(&[1, 1]);
        let r = tukey_depth(&s, &x).unwrap();
        assert_eq!(r.depth, 2);
        check_witness(&s, &x, &r);
        // off the line: a separating halfspace holds nothing
        let r = tukey_depth(&s, &Point::from_ints(&[0, 1])).unwrap();
        assert_eq!(r.depth, 0);
    }

    #[test]
    fn flat_depths() {
        let s = set(&[&[1, 1, 1], &[1, -1, 1], &[-1, 1, 1], &[-1, -1, 1]]);
        let axis = AffineFlat::new(
            Point::from_ints(&[0, 0, 0]),
            vec![Point::from_ints(&[0, 0, 1])],
        )
        .unwrap();
        let r = flat_depth(&s, &axis).unwrap();
        assert_eq!(r.depth, 2);
        assert_eq!(halfspace_count(&s, &r.witness), 2);
        assert!(r.witness.on_boundary(&Point::from_ints(&[0, 0, 7])));

        let line =
            AffineFlat::new(Point::from_ints(&[0, 0]), vec![Point::from_ints(&[1, 0])]).unwrap();
        assert_eq!(flat_depth(&square(), &line).unwrap().depth, 2);

        let x = Point::from_ints(&[0, 0]);
        let pt = AffineFlat::new(x.clone(), vec![]).unwrap();
        assert_eq!(
            flat_depth(&square(), &pt).unwrap().depth,
            tukey_depth(&square(), &x).unwrap().depth
        );
        assert!(AffineFlat::new(
            x.clone(),
            vec![Point::from_ints(&[1, 0]), Point::from_ints(&[2, 0])]
        )
        .is_err());
    }

    #[test]
    fn clouds() {
        let s = cloud_set(2, 2, &ratio(1, 100)).unwrap();
        assert_eq!(s.len(), 6);
        let best = cloud_candidates(&s, 2, 2)
            .iter()
            .map(|c| tukey_depth(&s, c).unwrap().depth)
            .max()
            .unwrap();
        assert_eq!(best, 2);
        let collapsed = cloud_set(2, 3, &int(0)).unwrap();
        assert_eq!(
            tukey_depth(&collapsed, &Point::from_ints(&[1, 0]))
                .unwrap()
                .depth,
            3
        );
    }

    #[test]
    fn three_dimensional_center() {
        let s = set(&[
            &[0, 0, 0],
            &[2, 0, 0],
            &[0, 2, 0],
            &[2, 2, 0],
            &[0, 0, 2],
            &[2, 0, 2],
            &[0, 2, 2],
            &[2, 2, 2],
        ]);
        let x = Point::from_ints(&[1, 1, 1]);
        let r = tukey_depth(&s, &x).unwrap();
        assert_eq!(r.depth, 4);
        check_witness(&s, &x, &r);
    }
}
