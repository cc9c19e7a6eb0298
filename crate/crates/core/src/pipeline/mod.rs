//! Shallow halfspaces for lines through the stretched grid.
//!
//! For a line `ℓ` the pipeline clips it to the bounding box, covers the pair
//! of (rounded) unit-space exit points with stair-halfspaces, takes the member
//! of least volume, pushes its vertex outward, turns it into a Euclidean
//! halfspace `H″` and finally rotates that into `H‴ ⊇ ℓ` without gaining grid
//! points. Every step is exact and the result is checked, not trusted.

mod halfspace;
mod sweep;

pub use halfspace::{
    box_corners, clipped_box_vertices, lemma4_agreement, lemma4_halfspace, separate_from_vertices,
    separate_line, snap_vertex_outward, AgreementReport, SignedCoefficients,
};
pub use sweep::{line_depth_sweep, LineSource, SweepReport, SweepRow};

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::covering::{cover_pair, CoveringFamily};
use crate::depth::{flat_depth, AffineFlat, EuclideanHalfspace, PointSet};
use crate::error::{Error, Result};
use crate::grid::GridParams;
use crate::scalar::{self, Scalar};
use crate::stair::{volume_in_unit_cube, Point, StairHalfspace};

/// Outward steps tried before giving up on a line.
pub const MAX_OUTWARD_STEPS: usize = 3;

/// Constant `C_d` of the slack term `C_d/(m-1)` in the count bound.
///
/// Three contributions, each as a fraction of `n`:
/// moving the vertex by at most `s` grid steps per axis grows each of the at
/// most `d+1` component boxes by `d·s/(m-1)` in volume (`s ≤ 3`);
/// counting grid points instead of volume errs by at most `d/m` per box;
/// grid points closer than one step to the vertex, where the Euclidean and
/// stair-halfspaces may disagree, number at most `3d·n/m`.
pub fn slack_constant(d: usize) -> usize {
    let boxes = d + 1;
    boxes * d * MAX_OUTWARD_STEPS + boxes * d + 3 * d
}

/// `n·(2/(d+2) + C_d/(m-1))`.
pub fn count_bound(params: &GridParams) -> Scalar {
    let d = params.d as i64;
    let n = scalar::int(params.n() as i64);
    n * (scalar::ratio(2, d + 2)
        + scalar::ratio(slack_constant(params.d) as i64, params.m as i64 - 1))
}

/// Largest `j < m` with `K^j <= x`, for `x >= 1`.
pub fn bracket_exponent(params: &GridParams, axis: usize, x: &Scalar) -> Result<usize> {
    if x < &Scalar::one() {
        return Err(Error::Precondition(format!(
            "coordinate {x} below 1 on axis {axis}"
        )));
    }
    let floor = x.floor().to_integer();
    let k = &params.k[axis];
    let mut power = BigInt::one();
    let mut j = 0;
    while j + 1 < params.m && &power * k <= floor {
        power *= k;
        j += 1;
    }
    Ok(j)
}

/// The part of `ℓ` inside the closed box, as its two endpoints, when `ℓ`
/// meets the box interior.
pub fn clip_line(line: &AffineFlat, lo: &[Scalar], hi: &[Scalar]) -> Option<(Point, Point)> {
    let dir = line.directions.first()?;
    let base = &line.base;
    let mut t0: Option<Scalar> = None;
    let mut t1: Option<Scalar> = None;
    for i in 0..base.dim() {
        let v = &dir[i];
        if v.is_zero() {
            if base[i] <= lo[i] || base[i] >= hi[i] {
                return None;
            }
            continue;
        }
        let a = (&lo[i] - &base[i]) / v;
        let b = (&hi[i] - &base[i]) / v;
        let (enter, exit) = if v.is_positive() { (a, b) } else { (b, a) };
        t0 = Some(t0.map_or(enter.clone(), |t| t.max(enter)));
        t1 = Some(t1.map_or(exit.clone(), |t| t.min(exit)));
    }
    let (t0, t1) = (t0?, t1?);
    if t0 >= t1 {
        return None;
    }
    let at = |t: &Scalar| {
        Point::new(
            base.coords()
                .iter()
                .zip(dir.coords())
                .map(|(b, v)| b + t * v)
                .collect(),
        )
    };
    Some((at(&t0), at(&t1)))
}

/// Everything the pipeline produced for one line.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Certificate {
    pub d: usize,
    pub m: usize,
    pub n: usize,
    pub line: AffineFlat,
    /// The line misses the box interior; `h2` and `h3` coincide.
    pub trivial: bool,
    pub entry: Option<Point>,
    pub exit: Option<Point>,
    pub entry_unit: Option<Point>,
    pub exit_unit: Option<Point>,
    pub family: Option<CoveringFamily>,
    pub chosen: Option<usize>,
    #[serde(with = "scalar::serde_opt_scalar")]
    pub chosen_volume: Option<Scalar>,
    pub outward_steps: Option<usize>,
    pub vertex_unit: Option<Point>,
    pub vertex_stretched: Option<Point>,
    pub coefficients: Option<SignedCoefficients>,
    pub h2: EuclideanHalfspace,
    pub h3: EuclideanHalfspace,
    pub count_h2: usize,
    pub count_h3: usize,
    #[serde(with = "scalar::serde_scalar")]
    pub bound: Scalar,
    pub depth: Option<usize>,
}

impl Theorem1Certificate {
    /// Every soundness condition that fails, described in words.
    pub fn check(&self, grid: &[Point]) -> Vec<String> {
        let mut out = Vec::new();
        let dir = &self.line.directions[0];
        if !self.h3.on_boundary(&self.line.base)
            || !scalar::dot(&self.h3.normal, dir.coords()).is_zero()
        {
            out.push("line not contained in the boundary of H'''".into());
        }
        if grid
            .iter()
            .any(|x| self.h3.contains(x) && !self.h2.contains(x))
        {
            out.push("H''' holds a grid point outside H''".into());
        }
        if self.count_h3 > self.count_h2 {
            out.push(format!(
                "count(H''') = {} exceeds count(H'') = {}",
                self.count_h3, self.count_h2
            ));
        }
        if scalar::int(self.count_h2 as i64) > self.bound {
            out.push(format!(
                "count(H'') = {} exceeds bound {}",
                self.count_h2, self.bound
            ));
        }
        if let Some(depth) = self.depth {
            if depth > self.count_h3 {
                out.push(format!(
                    "line depth {depth} exceeds count(H''') = {}",
                    self.count_h3
                ));
            }
        }
        if let Some(v) = &self.chosen_volume {
            if v > &scalar::ratio(2, self.d as i64 + 2) {
                out.push(format!("chosen member volume {v} exceeds 2/(d+2)"));
            }
        }
        for p in self.entry.iter().chain(&self.exit) {
            if !self.h2.contains(p) {
                out.push(format!("clip point {p} outside H''"));
            }
        }
        out
    }
}

/// The grid of one size together with its bounding box, shared across lines.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub params: GridParams,
    pub points: Vec<Point>,
    pub lo: Vec<Scalar>,
    pub hi: Vec<Scalar>,
}

impl Pipeline {
    pub fn new(params: GridParams) -> Result<Self> {
        if params.d < 2 {
            return Err(Error::InvalidParameter(
                "the line pipeline needs d >= 2".into(),
            ));
        }
        let points = params.points();
        let lo = vec![Scalar::one(); params.d];
        let hi = (0..params.d)
            .map(|i| scalar::from_bigint(params.top(i)))
            .collect();
        Ok(Pipeline {
            params,
            points,
            lo,
            hi,
        })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    fn count(&self, h: &EuclideanHalfspace) -> usize {
        self.points.iter().filter(|x| h.contains(x)).count()
    }

    fn to_unit(&self, x: &Point) -> Result<Point> {
        let scale = self.params.m as i64 - 1;
        (0..x.dim())
            .map(|i| {
                bracket_exponent(&self.params, i, &x[i]).map(|j| scalar::ratio(j as i64, scale))
            })
            .collect::<Result<Vec<_>>>()
            .map(Point::new)
    }

    /// Runs the pipeline on one line, optionally computing its exact depth.
    pub fn shallow_halfspace_for_line(
        &self,
        line: &AffineFlat,
        with_depth: bool,
    ) -> Result<Theorem1Certificate> {
        line.base.check_dim(self.params.d)?;
        if line.directions.len() != 1 {
            return Err(Error::InvalidParameter("expected a line".into()));
        }
        let depth = if with_depth {
            Some(flat_depth(&PointSet::new(self.points.clone())?, line)?.depth)
        } else {
            None
        };
        let mut cert = Theorem1Certificate {
            d: self.params.d,
            m: self.params.m,
            n: self.n(),
            line: line.clone(),
            trivial: false,
            entry: None,
            exit: None,
            entry_unit: None,
            exit_unit: None,
            family: None,
            chosen: None,
            chosen_volume: None,
            outward_steps: None,
            vertex_unit: None,
            vertex_stretched: None,
            coefficients: None,
            h2: EuclideanHalfspace {
                normal: vec![Scalar::one()],
                offset: Scalar::zero(),
            },
            h3: EuclideanHalfspace {
                normal: vec![Scalar::one()],
                offset: Scalar::zero(),
            },
            count_h2: 0,
            count_h3: 0,
            bound: count_bound(&self.params),
            depth,
        };

        let Some((entry, exit)) = clip_line(line, &self.lo, &self.hi) else {
            // nothing to do: any halfspace through the line supporting the box works
            let corners: Vec<(Point, bool)> = box_corners(&self.lo, &self.hi)
                .into_iter()
                .map(|c| (c, true))
                .collect();
            let h = separate_from_vertices(line, &corners, None, &self.points)?;
            cert.trivial = true;
            cert.count_h2 = self.count(&h);
            cert.count_h3 = cert.count_h2;
            cert.h2 = h.clone();
            cert.h3 = h;
            return Ok(cert);
        };

        let (p, q) = (self.to_unit(&entry)?, self.to_unit(&exit)?);
        let family = cover_pair(&p, &q)?;
        let volumes: Vec<Scalar> = family.members.iter().map(volume_in_unit_cube).collect();
        let least = volumes.iter().min().ok_or(Error::EmptyFamily)?.clone();

        // members tied at the least volume compete on the final count
        let mut best: Option<(usize, Attempt)> = None;
        let mut last_err = None;
        for (i, member) in family
            .members
            .iter()
            .enumerate()
            .filter(|(i, _)| volumes[*i] == least)
        {
            match self.attempt(line, member, &entry, &exit) {
                Ok(a) => {
                    let better = best
                        .as_ref()
                        .is_none_or(|(_, b)| (a.count_h3, a.count_h2) < (b.count_h3, b.count_h2));
                    if better {
                        best = Some((i, a));
                    }
                }
                Err(e) => last_err = Some(e),
            }
        }
        let Some((chosen, a)) = best else {
            return Err(last_err.expect("some member has the least volume"));
        };
        cert.chosen = Some(chosen);
        cert.chosen_volume = Some(least);
        cert.count_h2 = a.count_h2;
        cert.count_h3 = a.count_h3;
        cert.outward_steps = Some(a.steps);
        cert.vertex_unit = Some(a.vertex_unit);
        cert.vertex_stretched = Some(a.vertex_stretched);
        cert.coefficients = Some(a.coefficients);
        cert.h2 = a.h2;
        cert.h3 = a.h3;
        cert.entry_unit = Some(p);
        cert.exit_unit = Some(q);
        cert.entry = Some(entry);
        cert.exit = Some(exit);
        cert.family = Some(family);
        Ok(cert)
    }

    // Moves the member's vertex outward one step at a time until both clip
    // points are inside `H″` and the line can be separated.
    fn attempt(
        &self,
        line: &AffineFlat,
        member: &StairHalfspace,
        entry: &Point,
        exit: &Point,
    ) -> Result<Attempt> {
        let mut last_err = None;
        for steps in 1..=MAX_OUTWARD_STEPS {
            let u = snap_vertex_outward(member.vertex(), member.index_set(), self.params.m, steps)?;
            let a = self.params.pi_inv_extended(&u)?;
            let (h2, coefficients) = lemma4_halfspace(&a, member.index_set())?;
            if !h2.contains(entry) || !h2.contains(exit) {
                last_err = Some(Error::Precondition(format!(
                    "clip points outside H'' after {steps} outward steps"
                )));
                continue;
            }
            match separate_line(line, &h2, &self.lo, &self.hi, &self.points) {
                Ok(h3) => {
                    return Ok(Attempt {
                        steps,
                        count_h2: self.count(&h2),
                        count_h3: self.count(&h3),
                        vertex_unit: u,
                        vertex_stretched: a,
                        coefficients,
                        h2,
                        h3,
                    })
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.expect("at least one outward step is tried"))
    }
}

struct Attempt {
    steps: usize,
    count_h2: usize,
    count_h3: usize,
    vertex_unit: Point,
    vertex_stretched: Point,
    coefficients: SignedCoefficients,
    h2: EuclideanHalfspace,
    h3: EuclideanHalfspace,
}
