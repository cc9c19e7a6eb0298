//! Hand-built stair-flats used as worked examples.

use super::{generate, HalfStairFlat, StairFlat};
use crate::scalar::int;
use crate::stair::Point;

fn p(c: &[i64]) -> Point {
    Point::from_ints(c)
}

/// `{1} x (-inf, 2]` together with `(-inf, 1] x {2}` in the plane.
pub fn planar_stair_line() -> StairFlat {
    StairFlat::diagonal(
        HalfStairFlat {
            carrier: StairFlat::FullSpace { dim: 1 },
            boundary: StairFlat::point(p(&[1])),
            witnesses: vec![p(&[0]), p(&[-2])],
            opposite: vec![p(&[2]), p(&[4])],
        },
        int(2),
    )
}

/// The planar stair-line extruded down to height 3, capped by the side of the
/// plane that lies under its horizontal ray.
pub fn spatial_stair_plane() -> StairFlat {
    StairFlat::diagonal(
        HalfStairFlat {
            carrier: StairFlat::FullSpace { dim: 2 },
            boundary: planar_stair_line(),
            witnesses: vec![p(&[0, 1]), p(&[-1, 0])],
            opposite: vec![p(&[2, 1]), p(&[0, 3]), p(&[2, 3])],
        },
        int(3),
    )
}

/// A stair-line in space whose covering family is spelled out member by member:
/// a vertical ray over `(2, 1)` capped at height 2 by a downward ray lying in
/// the planar stair-line `{2} x (-inf, 3]` together with `(-inf, 2] x {3}`.
pub fn spatial_stair_line() -> StairFlat {
    let carrier = StairFlat::diagonal(
        HalfStairFlat {
            carrier: StairFlat::FullSpace { dim: 1 },
            boundary: StairFlat::point(p(&[2])),
            witnesses: vec![p(&[1])],
            opposite: vec![p(&[3])],
        },
        int(3),
    );
    StairFlat::diagonal(
        HalfStairFlat {
            carrier,
            boundary: StairFlat::point(p(&[2, 1])),
            witnesses: vec![p(&[2, 0]), p(&[2, -1])],
            opposite: vec![p(&[2, 2]), p(&[1, 3])],
        },
        int(2),
    )
}

/// Seed for the stair-plane in `R^4`.
pub const PLANE_R4_SEED: u64 = 4;

/// A seeded stair-plane in `R^4`: a static stair-line up to some height, then a
/// half stair-plane bounded by it at that height.
pub fn stair_plane_r4() -> StairFlat {
    generate::random_diagonal(4, 2, PLANE_R4_SEED).expect("fixture seed yields a valid flat")
}

/// Fixture names accepted by [`by_name`], with the alias each one is also known by.
pub const NAMES: [(&str, &str); 4] = [
    ("stair-line-r2", "fig6"),
    ("stair-plane-r3", "fig7"),
    ("stair-plane-r4", "fig8"),
    ("stair-line-r3", "fig9"),
];

pub fn by_name(name: &str) -> Option<StairFlat> {
    let canonical = NAMES
        .iter()
        .find(|(n, alias)| *n == name || *alias == name)?
        .0;
    Some(match canonical {
        "stair-line-r2" => planar_stair_line(),
        "stair-plane-r3" => spatial_stair_plane(),
        "stair-plane-r4" => stair_plane_r4(),
        _ => spatial_stair_line(),
    })
}
