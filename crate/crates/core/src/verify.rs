//! Self-check suites behind the `verify` subcommand. Each check yields one
//! record; a suite passes when all of its records do.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::covering::{check_family, cover_pair, pair_family_size};
use crate::depth::{cloud_candidates, cloud_set, tukey_depth};
use crate::error::{Error, Result};
use crate::flats::{cover_flat, fixtures, generate};
use crate::grid::GridParams;
use crate::pipeline::lemma4_agreement;
use crate::scalar::{self, Scalar};
use crate::stair::{self, IndexSet, Point};
use crate::AxisBox;

pub const SUITES: [&str; 4] = ["cover", "lemma4", "lemma1", "depth"];

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn record(
    suite: &'static str,
    name: impl Into<String>,
    passed: bool,
    detail: impl Into<String>,
) -> CheckRecord {
    CheckRecord {
        suite,
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// A point of `[0,1]^d` with coordinates in sixteenths.
pub fn random_unit_point<R: Rng>(rng: &mut R, d: usize) -> Point {
    Point::new(
        (0..d)
            .map(|_| scalar::ratio(rng.gen_range(0..=16), 16))
            .collect(),
    )
}

/// Two distinct random points of `[0,1]^d`.
pub fn random_unit_pair<R: Rng>(rng: &mut R, d: usize) -> (Point, Point) {
    let p = random_unit_point(rng, d);
    loop {
        let q = random_unit_point(rng, d);
        if q != p {
            return (p, q);
        }
    }
}

fn volume_sum(members: &[stair::StairHalfspace]) -> Scalar {
    members.iter().map(stair::volume_in_unit_cube).sum()
}

/// Two-point families on random pairs, then the stair-flat families.
pub fn cover_suite(pairs_per_dim: usize, seed: u64) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in 2..=5 {
        let mut failures = Vec::new();
        for i in 0..pairs_per_dim {
            let (p, q) = random_unit_pair(&mut rng, d);
            let fam = cover_pair(&p, &q)?;
            let cert = check_family(&fam, &p, &q)?;
            let sized = fam.members.len() == pair_family_size(d) && fam.delta == d - 1;
            let volume_ok = volume_sum(&fam.members) == scalar::int(fam.delta as i64);
            if !(cert.passed && sized && volume_ok) {
                failures.push(format!("pair {i}: {p} {q}"));
            }
        }
        out.push(record(
            "cover",
            format!("pair families d={d}"),
            failures.is_empty(),
            failures.join("; "),
        ));
    }
    let mut flats: Vec<(String, crate::flats::StairFlat)> = fixtures::NAMES
        .iter()
        .map(|(n, _)| (n.to_string(), fixtures::by_name(n).expect("listed")))
        .collect();
    for d in 2..=4 {
        for k in 1..d {
            for s in 0..3 {
                flats.push((
                    format!("random d={d} k={k} seed={s}"),
                    generate::random_diagonal(d, k, s)?,
                ));
            }
        }
    }
    for (name, f) in flats {
        let fam = cover_flat(&f)?;
        let cert = stair::verify_cover(&fam.members, fam.delta, &AxisBox::unbounded(fam.dim))?;
        out.push(record(
            "cover",
            format!("flat {name}"),
            cert.passed,
            format!("delta={}", fam.delta),
        ));
    }
    Ok(out)
}

/// Exhaustive halfspace agreement on `m = 4` grids in the plane and in space.
pub fn lemma4_suite() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for d in [2, 3] {
        let g = GridParams::new(d, 4)?;
        let mut checked = 0;
        let mut bad = Vec::new();
        for a in g
            .indices()
            .into_iter()
            .filter(|a| a.iter().all(|&j| j >= 1))
        {
            for set in IndexSet::all_proper(d) {
                let r = lemma4_agreement(&g, &a, &set)?;
                checked += r.checked;
                if !r.disagreements.is_empty() {
                    bad.push(format!("{a:?} {set:?}"));
                }
            }
        }
        out.push(record(
            "lemma4",
            format!("agreement d={d} m=4"),
            bad.is_empty(),
            format!("{checked} points; {}", bad.join("; ")),
        ));
    }
    Ok(out)
}

/// Every admissible pair of a bottom-layer and a higher grid point.
pub fn lemma1_suite() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for d in 2..=3 {
        for m in 2..=4 {
            let g = GridParams::new(d, m)?;
            let idx = g.indices();
            let mut pairs = 0;
            let mut bad = 0;
            for a in idx.iter().filter(|a| a[d - 1] == 0) {
                for b in idx.iter().filter(|b| b[d - 1] > 0) {
                    pairs += 1;
                    if !g.lemma1_check(a, b)? {
                        bad += 1;
                    }
                }
            }
            out.push(record(
                "lemma1",
                format!("layer pairs d={d} m={m}"),
                bad == 0,
                format!("{pairs} pairs, {bad} failing"),
            ));
        }
    }
    Ok(out)
}

/// The tiny-cloud sets: no candidate point is deeper than one cloud.
pub fn depth_suite() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (d, size) in [(2, 2), (2, 5), (3, 2)] {
        let s = cloud_set(d, size, &scalar::ratio(1, 100))?;
        let max = cloud_candidates(&s, d, size)
            .iter()
            .map(|x| tukey_depth(&s, x).map(|r| r.depth))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        out.push(record(
            "depth",
            format!("cloud d={d} size={size}"),
            max == size,
            format!("max depth {max}, n={}", s.len()),
        ));
    }
    Ok(out)
}

pub fn run_suite(name: &str) -> Result<Vec<CheckRecord>> {
    match name {
        "cover" => cover_suite(10, 0),
        "lemma4" => lemma4_suite(),
        "lemma1" => lemma1_suite(),
        "depth" => depth_suite(),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s)?);
            }
            Ok(out)
        }
        other => Err(Error::InvalidParameter(format!("unknown suite {other}"))),
    }
}
