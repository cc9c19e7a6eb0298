//! Stair-convexity primitives.
//!
//! Coordinates are 0-based in code. The component index `j` runs over
//! `0..=d`: component `0` is the lower orthant at the vertex, and component
//! `j >= 1` is the region that is `>= vertex` on axis `j - 1` and `<= vertex`
//! on every later axis.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Index;

use num::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cells::{AxisBox, CellDecomposition};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A point of `R^d` with exact rational coordinates, `d >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Scalar>);

impl Point {
    /// Panics if `coords` is empty.
    pub fn new(coords: Vec<Scalar>) -> Self {
        assert!(!coords.is_empty(), "points need at least one coordinate");
        Point(coords)
    }

    pub fn try_new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter(
                "point with zero coordinates".into(),
            ));
        }
        Ok(Point(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn last(&self) -> &Scalar {
        self.0.last().expect("non-empty")
    }

    /// Vertical projection: drops the last coordinate. Panics in dimension 1.
    pub fn project(&self) -> Point {
        Point::new(self.0[..self.0.len() - 1].to_vec())
    }

    /// Appends `z` as a new last coordinate.
    pub fn lift(&self, z: Scalar) -> Point {
        let mut c = self.0.clone();
        c.push(z);
        Point(c)
    }

    pub fn with_coord(&self, axis: usize, value: Scalar) -> Point {
        let mut c = self.0.clone();
        c[axis] = value;
        Point(c)
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for Point {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        scalar::serde_scalars::serialize(&self.0, ser)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let coords = scalar::serde_scalars::deserialize(de)?;
        Point::try_new(coords).map_err(serde::de::Error::custom)
    }
}

/// A proper nonempty subset of `{0, ..., d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    dim: usize,
    members: BTreeSet<usize>,
}

impl IndexSet {
    pub fn new(dim: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i > dim) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                max: dim,
            });
        }
        if members.is_empty() {
            return Err(Error::InvalidIndexSet("empty".into()));
        }
        if members.len() == dim + 1 {
            return Err(Error::InvalidIndexSet(format!("all of 0..={dim}")));
        }
        Ok(IndexSet { dim, members })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet {
            dim: self.dim,
            members: (0..=self.dim)
                .filter(|i| !self.members.contains(i))
                .collect(),
        }
    }

    /// Same members, reinterpreted one dimension up, optionally adding the new top index.
    pub fn lifted(&self, add_top: bool) -> IndexSet {
        let mut members = self.members.clone();
        if add_top {
            members.insert(self.dim + 1);
        }
        IndexSet {
            dim: self.dim + 1,
            members,
        }
    }

    /// Every proper nonempty index set of dimension `dim`.
    pub fn all_proper(dim: usize) -> Vec<IndexSet> {
        let full = 1usize << (dim + 1);
        (1..full - 1)
            .map(|mask| IndexSet {
                dim,
                members: (0..=dim).filter(|i| mask & (1 << i) != 0).collect(),
            })
            .collect()
    }
}

/// The union of components `C_i(vertex)` over `i` in the index set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHalfspace", into = "RawHalfspace")]
pub struct StairHalfspace {
    vertex: Point,
    index_set: IndexSet,
}

#[derive(Serialize, Deserialize)]
struct RawHalfspace {
    vertex: Point,
    index_set: Vec<usize>,
}

impl TryFrom<RawHalfspace> for StairHalfspace {
    type Error = Error;
    fn try_from(raw: RawHalfspace) -> Result<Self> {
        let set = IndexSet::new(raw.vertex.dim(), raw.index_set)?;
        StairHalfspace::new(raw.vertex, set)
    }
}

impl From<StairHalfspace> for RawHalfspace {
    fn from(h: StairHalfspace) -> Self {
        RawHalfspace {
            index_set: h.index_set.iter().collect(),
            vertex: h.vertex,
        }
    }
}

impl StairHalfspace {
    pub fn new(vertex: Point, index_set: IndexSet) -> Result<Self> {
        if index_set.dim() != vertex.dim() {
            return Err(Error::DimensionMismatch {
                expected: vertex.dim(),
                found: index_set.dim(),
            });
        }
        Ok(StairHalfspace { vertex, index_set })
    }

    /// Convenience constructor; the members must form a proper nonempty set.
    pub fn from_components(vertex: Point, members: &[usize]) -> Result<Self> {
        let set = IndexSet::new(vertex.dim(), members.iter().copied())?;
        StairHalfspace::new(vertex, set)
    }

    pub fn vertex(&self) -> &Point {
        &self.vertex
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    pub fn dim(&self) -> usize {
        self.vertex.dim()
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        x.check_dim(self.dim())?;
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &Point) -> bool {
        types_of(&self.vertex, x)
            .into_iter()
            .any(|j| self.index_set.contains(j))
    }

    /// The combinatorially equivalent stair-halfspace with the complementary index set.
    pub fn complement(&self) -> StairHalfspace {
        StairHalfspace {
            vertex: self.vertex.clone(),
            index_set: self.index_set.complement(),
        }
    }

    /// `self x (-inf, z]`, optionally united with the upper half-space `{x_d >= z}`.
    pub fn extrude(&self, z: Scalar, add_upper: bool) -> StairHalfspace {
        StairHalfspace {
            vertex: self.vertex.lift(z),
            index_set: self.index_set.lifted(add_upper),
        }
    }

    pub fn component_boxes(&self) -> Vec<AxisBox> {
        self.index_set
            .iter()
            .map(|i| component_box(&self.vertex, i).expect("index in range"))
            .collect()
    }
}

impl fmt::Display for StairHalfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.index_set.iter().map(|i| format!("C_{i}")).collect();
        write!(f, "{} @ {}", parts.join("∪"), self.vertex)
    }
}

fn types_of(a: &Point, b: &Point) -> Vec<usize> {
    let d = a.dim();
    // suffix_le[i]: b_k <= a_k for every k >= i
    let mut suffix_le = vec![true; d + 1];
    for i in (0..d).rev() {
        suffix_le[i] = suffix_le[i + 1] && b[i] <= a[i];
    }
    let mut types = Vec::new();
    if suffix_le[0] {
        types.push(0);
    }
    for j in 1..=d {
        if b[j - 1] >= a[j - 1] && suffix_le[j] {
            types.push(j);
        }
    }
    types
}

/// The set of types of `b` with respect to `a`. Never empty.
pub fn type_set(a: &Point, b: &Point) -> Result<Vec<usize>> {
    b.check_dim(a.dim())?;
    Ok(types_of(a, b))
}

/// The component `C_i(a)` as a product of intervals.
pub fn component_box(a: &Point, i: usize) -> Result<AxisBox> {
    let d = a.dim();
    if i > d {
        return Err(Error::IndexOutOfRange { index: i, max: d });
    }
    let mut lower = vec![None; d];
    let mut upper = vec![None; d];
    if i >= 1 {
        lower[i - 1] = Some(a[i - 1].clone());
    }
    let first_capped = if i == 0 { 0 } else { i };
    for k in first_capped..d {
        upper[k] = Some(a[k].clone());
    }
    Ok(AxisBox::new(lower, upper).expect("component bounds are ordered"))
}

/// Number of members of `family` containing `x`.
pub fn multiplicity_at(family: &[StairHalfspace], x: &Point) -> usize {
    family.iter().filter(|h| h.contains_unchecked(x)).count()
}

/// Half of the smallest nonzero `|x_i - vertex_i|`, or 1 when `x == vertex`.
pub fn auto_gap(h: &StairHalfspace, x: &Point) -> Scalar {
    x.coords()
        .iter()
        .zip(h.vertex.coords())
        .map(|(a, b)| (a - b).abs())
        .filter(|g| !g.is_zero())
        .min()
        .map(|g| g / scalar::int(2))
        .unwrap_or_else(|| scalar::int(1))
}

/// Whether `x` lies on the boundary of `h`.
///
/// `gap` must be positive and strictly below every nonzero `|x_i - vertex_i|`;
/// then the `3^d` perturbations of `x` by `-gap, 0, +gap` per axis meet every
/// component adjacent to `x`.
pub fn shs_boundary_contains(h: &StairHalfspace, x: &Point, gap: &Scalar) -> Result<bool> {
    x.check_dim(h.dim())?;
    if !gap.is_positive() {
        return Err(Error::InvalidParameter("gap must be positive".into()));
    }
    let limit = x
        .coords()
        .iter()
        .zip(h.vertex.coords())
        .map(|(a, b)| (a - b).abs())
        .filter(|g| !g.is_zero())
        .min();
    if let Some(limit) = limit {
        if *gap >= limit {
            return Err(Error::GapTooLarge {
                gap: gap.to_string(),
                limit: limit.to_string(),
            });
        }
    }
    if !h.contains_unchecked(x) {
        return Ok(false);
    }
    let d = x.dim();
    let offsets = [-gap.clone(), Scalar::zero(), gap.clone()];
    let total = 3usize.pow(d as u32);
    for code in 0..total {
        let mut c = code;
        let coords: Vec<Scalar> = (0..d)
            .map(|i| {
                let o = &offsets[c % 3];
                c /= 3;
                &x[i] + o
            })
            .collect();
        if !h.contains_unchecked(&Point::new(coords)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Lemma-5 style outward translation of `h` to the vertex `b`.
///
/// Requires `b_i < a_i` on the axes whose component index (axis + 1) is in the
/// index set, and `b_i > a_i` on every other axis.
pub fn translate_outwards(h: &StairHalfspace, b: &Point) -> Result<StairHalfspace> {
    b.check_dim(h.dim())?;
    for axis in 0..h.dim() {
        let a = &h.vertex[axis];
        let ok = if h.index_set.contains(axis + 1) {
            b[axis] < *a
        } else {
            b[axis] > *a
        };
        if !ok {
            let want = if h.index_set.contains(axis + 1) {
                "<"
            } else {
                ">"
            };
            return Err(Error::Precondition(format!(
                "axis {axis}: need b {want} {a}, got {}",
                b[axis]
            )));
        }
    }
    Ok(StairHalfspace {
        vertex: b.clone(),
        index_set: h.index_set.clone(),
    })
}

/// Exact check that `inner` is contained in `outer`, over the joint cell decomposition.
pub fn is_subset(inner: &StairHalfspace, outer: &StairHalfspace) -> Result<bool> {
    outer.vertex.check_dim(inner.dim())?;
    let cells = CellDecomposition::from_vertices(
        [inner.vertex(), outer.vertex()],
        &AxisBox::unbounded(inner.dim()),
    );
    let ok = cells.cells().all(|cell| {
        !inner.contains_unchecked(&cell.representative)
            || outer.contains_unchecked(&cell.representative)
    });
    Ok(ok)
}

/// Result of an exact multiplicity check over a cell decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub passed: bool,
    pub delta: usize,
    pub cells_checked: usize,
    pub violation: Option<CellViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellViolation {
    pub representative: Point,
    pub multiplicity: usize,
}

/// Checks that every open cell of the decomposition induced by the members'
/// vertices (clipped to `clip`) is covered exactly `delta` times.
///
/// Membership in each component is a conjunction of comparisons against vertex
/// coordinates, so it is constant on every open cell and one representative per
/// cell decides the whole cell.
pub fn verify_cover(
    family: &[StairHalfspace],
    delta: usize,
    clip: &AxisBox,
) -> Result<CoverCertificate> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let d = first.dim();
    for h in family {
        h.vertex.check_dim(d)?;
    }
    if clip.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: clip.dim(),
        });
    }
    let cells = CellDecomposition::from_vertices(family.iter().map(|h| h.vertex()), clip);
    let mut checked = 0;
    for cell in cells.cells() {
        checked += 1;
        let mult = multiplicity_at(family, &cell.representative);
        if mult != delta {
            return Ok(CoverCertificate {
                passed: false,
                delta,
                cells_checked: checked,
                violation: Some(CellViolation {
                    representative: cell.representative,
                    multiplicity: mult,
                }),
            });
        }
    }
    Ok(CoverCertificate {
        passed: true,
        delta,
        cells_checked: checked,
        violation: None,
    })
}

/// Exact volume of `h ∩ [0,1]^d`.
pub fn volume_in_unit_cube(h: &StairHalfspace) -> Scalar {
    let cells = CellDecomposition::from_vertices([h.vertex()], &AxisBox::unit_cube(h.dim()));
    cells
        .cells()
        .filter(|cell| h.contains_unchecked(&cell.representative))
        .map(|cell| cell.volume.expect("clipped cells are bounded"))
        .fold(Scalar::zero(), |acc, v| acc + v)
}

/// One axis-parallel piece of a stair-path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub from: Point,
    pub to: Point,
    pub axis: usize,
}

impl Segment {
    fn length(&self) -> Scalar {
        (&self.to[self.axis] - &self.from[self.axis]).abs()
    }

    /// Position of `x` along the segment measured from `from`, if `x` lies on it.
    fn offset_of(&self, x: &Point) -> Option<Scalar> {
        for i in 0..x.dim() {
            if i != self.axis && x[i] != self.from[i] {
                return None;
            }
        }
        let (lo, hi) = if self.from[self.axis] <= self.to[self.axis] {
            (&self.from[self.axis], &self.to[self.axis])
        } else {
            (&self.to[self.axis], &self.from[self.axis])
        };
        if x[self.axis] < *lo || x[self.axis] > *hi {
            return None;
        }
        Some((&x[self.axis] - &self.from[self.axis]).abs())
    }

    pub fn point_at(&self, t: &Scalar) -> Point {
        let v = &self.from[self.axis] + (&self.to[self.axis] - &self.from[self.axis]) * t;
        self.from.with_coord(self.axis, v)
    }
}

/// The stair-path between two points: at most `d` axis-parallel segments,
/// zero-length pieces omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StairPath {
    pub start: Point,
    pub end: Point,
    pub segments: Vec<Segment>,
}

impl StairPath {
    pub fn length(&self) -> Scalar {
        self.segments
            .iter()
            .map(Segment::length)
            .fold(Scalar::zero(), |a, b| a + b)
    }

    /// Arc-length (L1) position of `x` along the path, or `None` if `x` is off the path.
    pub fn arc_position(&self, x: &Point) -> Option<Scalar> {
        if x == &self.start {
            return Some(Scalar::zero());
        }
        let mut run = Scalar::zero();
        for seg in &self.segments {
            if let Some(off) = seg.offset_of(x) {
                return Some(run + off);
            }
            run += seg.length();
        }
        None
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.arc_position(x).is_some()
    }

    /// Breakpoints plus `per_segment - 1` evenly spaced interior points per segment.
    pub fn sample_points(&self, per_segment: usize) -> Vec<Point> {
        let mut out = vec![self.start.clone()];
        for seg in &self.segments {
            for k in 1..per_segment.max(1) {
                out.push(seg.point_at(&scalar::ratio(k as i64, per_segment as i64)));
            }
            out.push(seg.to.clone());
        }
        out
    }
}

pub fn stair_path(a: &Point, b: &Point) -> Result<StairPath> {
    b.check_dim(a.dim())?;
    let mut segments = Vec::new();
    build_path(a.coords(), b.coords(), &[], &mut segments);
    Ok(StairPath {
        start: a.clone(),
        end: b.clone(),
        segments,
    })
}

// Appends the segments of σ(a, b) (in the first `a.len()` coordinates, with the
// fixed `tail` appended) running from `a` to `b`.
fn build_path(a: &[Scalar], b: &[Scalar], tail: &[Scalar], out: &mut Vec<Segment>) {
    let d = a.len();
    let full = |head: &[Scalar]| -> Point {
        let mut c = head.to_vec();
        c.extend_from_slice(tail);
        Point::new(c)
    };
    if d == 1 {
        if a != b {
            out.push(Segment {
                from: full(a),
                to: full(b),
                axis: 0,
            });
        }
        return;
    }
    if a[d - 1] > b[d - 1] {
        let mut rev = Vec::new();
        build_path(b, a, tail, &mut rev);
        out.extend(rev.into_iter().rev().map(|s| Segment {
            from: s.to,
            to: s.from,
            axis: s.axis,
        }));
        return;
    }
    let mut bent = a.to_vec();
    bent[d - 1] = b[d - 1].clone();
    if a[d - 1] != b[d - 1] {
        out.push(Segment {
            from: full(a),
            to: full(&bent),
            axis: d - 1,
        });
    }
    let mut sub_tail = vec![b[d - 1].clone()];
    sub_tail.extend_from_slice(tail);
    build_path(&bent[..d - 1], &b[..d - 1], &sub_tail, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn half() -> Point {
        Point::new(vec![ratio(1, 2), ratio(1, 2)])
    }

    #[test]
    fn type_set_examples() {
        assert_eq!(type_set(&p(&[0, 0]), &p(&[-1, -1])).unwrap(), vec![0]);
        assert_eq!(type_set(&p(&[0, 0]), &p(&[1, -1])).unwrap(), vec![1]);
        assert_eq!(type_set(&p(&[0, 0]), &p(&[0, 0])).unwrap(), vec![0, 1, 2]);
        assert!(type_set(&p(&[0, 0]), &p(&[0])).is_err());
    }

    #[test]
    fn component_box_examples() {
        let c0 = component_box(&half(), 0).unwrap();
        assert_eq!(c0.lower(), &[None, None]);
        assert_eq!(c0.upper(), &[Some(ratio(1, 2)), Some(ratio(1, 2))]);
        let c2 = component_box(&half(), 2).unwrap();
        assert_eq!(c2.lower(), &[None, Some(ratio(1, 2))]);
        assert_eq!(c2.upper(), &[None, None]);
        let c1 = component_box(&half(), 1).unwrap();
        assert_eq!(c1.lower(), &[Some(ratio(1, 2)), None]);
        assert_eq!(c1.upper(), &[None, Some(ratio(1, 2))]);
        assert!(component_box(&half(), 3).is_err());
    }

    #[test]
    fn index_set_must_be_proper_and_nonempty() {
        assert!(IndexSet::new(2, []).is_err());
        assert!(IndexSet::new(2, [0, 1, 2]).is_err());
        assert!(IndexSet::new(2, [3]).is_err());
        assert_eq!(IndexSet::all_proper(2).len(), 6);
        assert_eq!(IndexSet::all_proper(3).len(), 14);
    }

    #[test]
    fn containment_examples() {
        let h = StairHalfspace::from_components(half(), &[0, 2]).unwrap();
        assert!(h.contains(&p(&[0, 0])).unwrap());
        assert!(!h.contains(&p(&[1, 0])).unwrap());
        assert!(h.contains(&p(&[0, 1])).unwrap());
    }

    #[test]
    fn boundary_examples() {
        let c0 = StairHalfspace::from_components(p(&[0, 0]), &[0]).unwrap();
        let gap = ratio(1, 4);
        assert!(shs_boundary_contains(&c0, &p(&[0, 0]), &gap).unwrap());
        assert!(!shs_boundary_contains(&c0, &p(&[-1, -1]), &gap).unwrap());
        assert!(shs_boundary_contains(&c0, &p(&[-1, -1]), &int(2)).is_err());
        let all = StairHalfspace::from_components(p(&[0, 0]), &[0, 1]).unwrap();
        // (-1, 1) has type 2 only, which is missing from {0, 1}
        assert!(!all.contains(&p(&[-1, 1])).unwrap());
        assert!(!shs_boundary_contains(&all, &p(&[-1, 1]), &gap).unwrap());
    }

    #[test]
    fn stair_path_examples() {
        let path = stair_path(&p(&[0]), &p(&[1])).unwrap();
        assert_eq!(path.segments.len(), 1);
        let path = stair_path(&p(&[0, 0]), &p(&[1, 1])).unwrap();
        let ends: Vec<_> = path
            .segments
            .iter()
            .map(|s| (s.from.clone(), s.to.clone()))
            .collect();
        assert_eq!(
            ends,
            vec![(p(&[0, 0]), p(&[0, 1])), (p(&[0, 1]), p(&[1, 1]))]
        );
        let path = stair_path(&p(&[0, 0, 0]), &p(&[1, 1, 1])).unwrap();
        let ends: Vec<_> = path
            .segments
            .iter()
            .map(|s| (s.from.clone(), s.to.clone()))
            .collect();
        assert_eq!(
            ends,
            vec![
                (p(&[0, 0, 0]), p(&[0, 0, 1])),
                (p(&[0, 0, 1]), p(&[0, 1, 1])),
                (p(&[0, 1, 1]), p(&[1, 1, 1]))
            ]
        );
    }

    #[test]
    fn stair_path_drops_flat_first_leg_and_runs_from_a_to_b() {
        let path = stair_path(&p(&[3, 5]), &p(&[0, 5])).unwrap();
        assert_eq!(path.segments.len(), 1);
        let path = stair_path(&p(&[1, 4]), &p(&[0, 0])).unwrap();
        assert_eq!(path.segments.first().unwrap().from, p(&[1, 4]));
        assert_eq!(path.segments.last().unwrap().to, p(&[0, 0]));
        // the vertical leg starts at the lower endpoint, so it comes last here
        assert_eq!(path.segments[0].to, p(&[0, 4]));
    }

    #[test]
    fn translate_outwards_examples() {
        let h = StairHalfspace::from_components(half(), &[0, 2]).unwrap();
        let b = Point::new(vec![ratio(3, 4), ratio(1, 4)]);
        let moved = translate_outwards(&h, &b).unwrap();
        assert_eq!(moved.index_set(), h.index_set());
        assert!(is_subset(&h, &moved).unwrap());
        let bad = Point::new(vec![ratio(1, 4), ratio(1, 4)]);
        assert!(translate_outwards(&h, &bad).is_err());

        let h1 = StairHalfspace::from_components(p(&[0, 0]), &[1]).unwrap();
        let moved = translate_outwards(&h1, &p(&[-1, 1])).unwrap();
        assert!(is_subset(&h1, &moved).unwrap());
        assert!(!is_subset(&moved, &h1).unwrap());
    }

    #[test]
    fn multiplicity_examples() {
        let a = p(&[0, 0, 0]);
        let family: Vec<_> = (0..=3)
            .map(|i| StairHalfspace::from_components(a.clone(), &[i]).unwrap())
            .collect();
        let x = Point::new(vec![ratio(1, 3), ratio(-2, 7), ratio(5, 11)]);
        assert_eq!(multiplicity_at(&family, &x), 1);
        assert_eq!(multiplicity_at(&[], &x), 0);
    }

    #[test]
    fn verify_cover_examples() {
        let a = p(&[0, 0]);
        let single = vec![StairHalfspace::from_components(a.clone(), &[0]).unwrap()];
        let cert = verify_cover(&single, 1, &AxisBox::unbounded(2)).unwrap();
        assert!(!cert.passed);
        assert_eq!(cert.violation.unwrap().multiplicity, 0);
        let pair = vec![
            StairHalfspace::from_components(a.clone(), &[0, 2]).unwrap(),
            StairHalfspace::from_components(a, &[1]).unwrap(),
        ];
        assert!(
            verify_cover(&pair, 1, &AxisBox::unbounded(2))
                .unwrap()
                .passed
        );
        assert_eq!(
            verify_cover(&[], 1, &AxisBox::unbounded(2)),
            Err(Error::EmptyFamily)
        );
    }

    #[test]
    fn volume_examples() {
        let c0 = StairHalfspace::from_components(half(), &[0]).unwrap();
        assert_eq!(volume_in_unit_cube(&c0), ratio(1, 4));
        let c02 = StairHalfspace::from_components(half(), &[0, 2]).unwrap();
        assert_eq!(volume_in_unit_cube(&c02), ratio(3, 4));
        let outside = StairHalfspace::from_components(p(&[2, 2]), &[1]).unwrap();
        assert_eq!(volume_in_unit_cube(&outside), int(0));
    }

    #[test]
    fn halfspace_json_shape() {
        let h = StairHalfspace::from_components(half(), &[0, 2]).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"vertex":["1/2","1/2"],"index_set":[0,2]}"#);
        let back: StairHalfspace = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<StairHalfspace>(
            r#"{"vertex":["0","0"],"index_set":[0,1,2]}"#
        )
        .is_err());
    }
}
