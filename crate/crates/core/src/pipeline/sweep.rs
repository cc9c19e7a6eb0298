use num::{BigInt, One};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Pipeline;
use crate::depth::AffineFlat;
use crate::error::Result;
use crate::scalar::{self, Scalar};
use crate::stair::Point;

/// Where the lines of a sweep come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineSource {
    /// Every line through two distinct grid points.
    GridPairs,
    /// Lines through two seeded random points of the box.
    Random { count: usize, seed: u64 },
    /// Every axis-parallel line through a grid point.
    AxisLines,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub line: AffineFlat,
    pub trivial: bool,
    pub depth: Option<usize>,
    pub count_h2: usize,
    pub count_h3: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub d: usize,
    pub m: usize,
    pub n: usize,
    pub slack_constant: usize,
    #[serde(with = "scalar::serde_scalar")]
    pub bound: Scalar,
    pub rows: Vec<SweepRow>,
    pub max_depth: Option<usize>,
    pub max_count_h3: Option<usize>,
}

impl SweepReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.failures.is_empty()).count()
    }

    /// Largest `count(H‴)/n` over the sweep.
    pub fn max_count_ratio(&self) -> Option<Scalar> {
        self.max_count_h3
            .map(|c| scalar::ratio(c as i64, self.n as i64))
    }

    pub fn max_depth_ratio(&self) -> Option<Scalar> {
        self.max_depth
            .map(|c| scalar::ratio(c as i64, self.n as i64))
    }
}

fn through(p: &Point, q: &Point) -> Option<AffineFlat> {
    let dir = Point::new(
        q.coords()
            .iter()
            .zip(p.coords())
            .map(|(a, b)| a - b)
            .collect(),
    );
    AffineFlat::new(p.clone(), vec![dir]).ok()
}

fn random_box_point(pipe: &Pipeline, rng: &mut ChaCha8Rng) -> Point {
    let m = pipe.params.m;
    Point::new(
        pipe.params
            .k
            .iter()
            .map(|k| {
                let j = rng.gen_range(0..m - 1);
                let base = scalar::from_bigint(num::pow(k.clone(), j));
                let r = scalar::ratio(rng.gen_range(0..1000), 1000);
                base * (Scalar::one() + r * scalar::from_bigint(k - BigInt::one()))
            })
            .collect(),
    )
}

impl LineSource {
    pub fn lines(&self, pipe: &Pipeline) -> Vec<AffineFlat> {
        let pts = &pipe.points;
        match self {
            LineSource::GridPairs => (0..pts.len())
                .flat_map(|i| (i + 1..pts.len()).filter_map(move |j| through(&pts[i], &pts[j])))
                .collect(),
            LineSource::Random { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut out = Vec::with_capacity(*count);
                while out.len() < *count {
                    let p = random_box_point(pipe, &mut rng);
                    let q = random_box_point(pipe, &mut rng);
                    out.extend(through(&p, &q));
                }
                out
            }
            LineSource::AxisLines => {
                let d = pipe.params.d;
                let mut out = Vec::new();
                for axis in 0..d {
                    for (idx, p) in pipe.params.indices().iter().zip(pts) {
                        if idx[axis] == 0 {
                            let mut e = vec![0i64; d];
                            e[axis] = 1;
                            out.push(
                                AffineFlat::new(p.clone(), vec![Point::from_ints(&e)])
                                    .expect("axis direction"),
                            );
                        }
                    }
                }
                out
            }
        }
    }
}

/// Runs the pipeline on every line in parallel; rows keep the source order.
pub fn line_depth_sweep(
    pipe: &Pipeline,
    lines: &[AffineFlat],
    with_depth: bool,
) -> Result<SweepReport> {
    let rows: Vec<SweepRow> = lines
        .par_iter()
        .enumerate()
        .map(
            |(index, line)| match pipe.shallow_halfspace_for_line(line, with_depth) {
                Ok(cert) => SweepRow {
                    index,
                    line: line.clone(),
                    trivial: cert.trivial,
                    depth: cert.depth,
                    count_h2: cert.count_h2,
                    count_h3: cert.count_h3,
                    failures: cert.check(&pipe.points),
                },
                Err(e) => SweepRow {
                    index,
                    line: line.clone(),
                    trivial: false,
                    depth: None,
                    count_h2: 0,
                    count_h3: 0,
                    failures: vec![e.to_string()],
                },
            },
        )
        .collect();
    let ok = || rows.iter().filter(|r| r.failures.is_empty());
    Ok(SweepReport {
        d: pipe.params.d,
        m: pipe.params.m,
        n: pipe.n(),
        slack_constant: super::slack_constant(pipe.params.d),
        bound: super::count_bound(&pipe.params),
        max_depth: rows.iter().filter_map(|r| r.depth).max(),
        max_count_h3: ok().map(|r| r.count_h3).max(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridParams;

    #[test]
    fn empty_source_gives_empty_report() {
        let pipe = Pipeline::new(GridParams::new(2, 3).unwrap()).unwrap();
        let r = line_depth_sweep(&pipe, &[], true).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.max_depth, None);
    }

    #[test]
    fn planar_axis_lines_reach_half() {
        let pipe = Pipeline::new(GridParams::new(2, 3).unwrap()).unwrap();
        let lines = LineSource::AxisLines.lines(&pipe);
        assert_eq!(lines.len(), 6);
        let r = line_depth_sweep(&pipe, &lines, true).unwrap();
        assert_eq!(r.failures(), 0);
        assert!(r.max_depth.unwrap() >= 5);
    }

    #[test]
    fn random_lines_are_reproducible() {
        let pipe = Pipeline::new(GridParams::new(3, 3).unwrap()).unwrap();
        let src = LineSource::Random { count: 5, seed: 9 };
        assert_eq!(src.lines(&pipe), src.lines(&pipe));
        assert_eq!(src.lines(&pipe).len(), 5);
    }
}
