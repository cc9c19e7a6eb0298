//! Random diagonal stair-flats with small integer data.
//!
//! A flat of order `k` in `R^e` is built from a random `(k-1)`-flat `f'` in
//! `R^{e-1}` and a `k`-flat containing it, produced together with sample
//! points on both sides of `f'`; one side becomes the half-flat's witnesses.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{HalfStairFlat, StairFlat};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::stair::Point;

const COORD_RANGE: i64 = 3;

fn rand_int<R: Rng>(rng: &mut R) -> Scalar {
    scalar::int(rng.gen_range(-COORD_RANGE..=COORD_RANGE))
}

fn half_step() -> Scalar {
    scalar::ratio(1, 2)
}

/// A random stair-`k`-flat in `R^e`; diagonal whenever `0 < k < e`.
pub fn rand_flat<R: Rng>(rng: &mut R, k: usize, e: usize) -> StairFlat {
    assert!(e >= 1 && k <= e, "need 0 <= k <= e and e >= 1");
    if k == 0 {
        return StairFlat::point(Point::new((0..e).map(|_| rand_int(rng)).collect()));
    }
    if k == e {
        return StairFlat::FullSpace { dim: e };
    }
    let boundary = rand_flat(rng, k - 1, e - 1);
    let (carrier, a, b) = superflat(rng, &boundary);
    let (witnesses, opposite) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
    let z = rand_int(rng);
    StairFlat::diagonal(
        HalfStairFlat {
            carrier,
            boundary,
            witnesses,
            opposite,
        },
        z,
    )
}

/// A flat of one order higher containing `g`, with points strictly on each side of `g`.
pub fn superflat<R: Rng>(rng: &mut R, g: &StairFlat) -> (StairFlat, Vec<Point>, Vec<Point>) {
    let e = g.dim();
    let k = g.order();
    assert!(k < e, "no flat of higher order exists");
    match g {
        StairFlat::Point { point } if e == 1 => {
            let p = &point[0];
            let off = |v: Scalar| Point::new(vec![p + v]);
            (
                StairFlat::FullSpace { dim: 1 },
                vec![off(-half_step()), off(scalar::int(-2))],
                vec![off(half_step()), off(scalar::int(2))],
            )
        }
        StairFlat::Point { point } => {
            let base = point.project();
            let (carrier, a, b) = superflat(rng, &StairFlat::point(base.clone()));
            let (witnesses, opposite) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            let r = rng.gen_range(0..=2i64);
            let pe = point.last().clone();
            let z = &pe + scalar::int(r);
            let below = vec![
                base.lift(&pe - half_step()),
                base.lift(&pe - scalar::int(2)),
            ];
            let mut above: Vec<Point> = witnesses.iter().map(|w| w.lift(z.clone())).collect();
            if r > 0 {
                above.push(base.lift(&pe + scalar::ratio(r, 2)));
            }
            let half = HalfStairFlat {
                carrier,
                boundary: StairFlat::point(base),
                witnesses,
                opposite,
            };
            (StairFlat::diagonal(half, z), below, above)
        }
        StairFlat::Diagonal { half: hg, z } => {
            let low = z - half_step();
            let under: Vec<Point> = hg.witnesses.iter().map(|w| w.lift(low.clone())).collect();
            if k + 1 == e {
                let mut other: Vec<Point> =
                    hg.opposite.iter().map(|w| w.lift(low.clone())).collect();
                other.extend(hg.witnesses.iter().map(|w| w.lift(z + half_step())));
                return (StairFlat::FullSpace { dim: e }, under, other);
            }
            let (carrier, a, b) = superflat(rng, &hg.carrier);
            let (witnesses, opposite) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            let mut other = Vec::new();
            for w in &hg.opposite {
                other.push(w.lift(low.clone()));
                other.push(w.lift(z.clone()));
            }
            other.extend(witnesses.iter().map(|y| y.lift(z.clone())));
            let half = HalfStairFlat {
                carrier,
                boundary: hg.carrier.clone(),
                witnesses,
                opposite,
            };
            (StairFlat::diagonal(half, z.clone()), under, other)
        }
        _ => unreachable!("generator only produces points, full spaces and diagonal flats"),
    }
}

/// Seeded diagonal stair-`k`-flat in `R^d`.
pub fn random_diagonal(d: usize, k: usize, seed: u64) -> Result<StairFlat> {
    if d < 2 || k == 0 || k >= d {
        return Err(Error::InvalidParameter(format!(
            "diagonal flats need 1 <= k < d, got k={k}, d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = rand_flat(&mut rng, k, d);
    f.validate()?;
    Ok(f)
}
