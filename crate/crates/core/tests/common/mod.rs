//! Test-side oracles, written without the library's own predicates.
#![allow(dead_code)]

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;
use stairdepth::{Point, StairHalfspace};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Closed component `i` at vertex `a`: lower orthant for `i = 0`, otherwise
/// at least `a` on axis `i-1` and at most `a` on every later axis.
pub fn in_component(a: &[Q], i: usize, x: &[Q]) -> bool {
    if i == 0 {
        return x.iter().zip(a).all(|(xi, ai)| xi <= ai);
    }
    x[i - 1] >= a[i - 1] && (i..a.len()).all(|k| x[k] <= a[k])
}

pub fn contains(h: &StairHalfspace, x: &[Q]) -> bool {
    h.index_set()
        .iter()
        .any(|i| in_component(h.vertex().coords(), i, x))
}

pub fn multiplicity(family: &[StairHalfspace], x: &[Q]) -> usize {
    family.iter().filter(|h| contains(h, x)).count()
}

/// Random points avoiding every vertex coordinate, spread a little past the
/// vertices on both sides.
pub fn generic_points<R: Rng>(family: &[StairHalfspace], rng: &mut R, count: usize) -> Vec<Vec<Q>> {
    let d = family[0].dim();
    let axis_values: Vec<Vec<Q>> = (0..d)
        .map(|i| family.iter().map(|h| h.vertex()[i].clone()).collect())
        .collect();
    (0..count)
        .map(|_| {
            (0..d)
                .map(|i| {
                    let lo = axis_values[i].iter().min().unwrap() - qi(2);
                    let hi = axis_values[i].iter().max().unwrap() + qi(2);
                    loop {
                        let t = q(rng.gen_range(0..=997), 997);
                        let v = &lo + t * (&hi - &lo);
                        if !axis_values[i].contains(&v) {
                            break v;
                        }
                    }
                })
                .collect()
        })
        .collect()
}

/// Volume of `h ∩ [0,1]^d` for a vertex inside the cube; the components meet
/// only on boundaries, so their box volumes add up.
pub fn unit_volume(h: &StairHalfspace) -> Q {
    let a = h.vertex().coords();
    h.index_set()
        .iter()
        .map(|i| {
            let tail: Q = a[i..].iter().fold(Q::one(), |acc, c| acc * c);
            if i == 0 {
                tail
            } else {
                (Q::one() - &a[i - 1]) * tail
            }
        })
        .sum()
}

/// Family size of the two-point cover: two in the plane, then `d` more per dimension.
pub fn pair_family_size(d: usize) -> usize {
    if d == 2 {
        2
    } else {
        pair_family_size(d - 1) + d
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1usize; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row[k]
}

type Z2 = [BigInt; 2];

fn cross(a: &Z2, b: &Z2) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dot2(a: &Z2, b: &Z2) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1]
}

// 0 for angles in [0, pi), 1 for [pi, 2pi)
fn half(v: &Z2) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: &Z2, b: &Z2) -> std::cmp::Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| BigInt::zero().cmp(&cross(a, b)))
}

/// Planar Tukey depth by sorting the directions normal to each `p - x` and
/// evaluating the closed count at every critical direction and strictly
/// between consecutive ones.
pub fn sweep_depth_2d(points: &[[Q; 2]], x: &[Q; 2]) -> usize {
    let diffs: Vec<[Q; 2]> = points
        .iter()
        .map(|p| [&p[0] - &x[0], &p[1] - &x[1]])
        .collect();
    let at_x = diffs
        .iter()
        .filter(|y| y[0].is_zero() && y[1].is_zero())
        .count();
    // one positive scale for every vector keeps all signs
    let scale = diffs
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| num::Integer::lcm(&acc, c.denom()));
    let others: Vec<Z2> = diffs
        .iter()
        .filter(|y| !(y[0].is_zero() && y[1].is_zero()))
        .map(|y| [(&y[0] * &scale).to_integer(), (&y[1] * &scale).to_integer()])
        .collect();
    if others.is_empty() {
        return at_x;
    }
    let mut dirs: Vec<Z2> = Vec::new();
    for y in &others {
        dirs.push([-y[1].clone(), y[0].clone()]);
        dirs.push([y[1].clone(), -y[0].clone()]);
    }
    dirs.sort_by(angle_cmp);
    dirs.dedup_by(|a, b| angle_cmp(a, b).is_eq());
    let mut probes = dirs.clone();
    for i in 0..dirs.len() {
        let (u1, u2) = (&dirs[i], &dirs[(i + 1) % dirs.len()]);
        if cross(u1, u2).is_positive() {
            probes.push([&u1[0] + &u2[0], &u1[1] + &u2[1]]);
        } else {
            // half-turn gap: every point lies on one line through x
            probes.push([-u1[1].clone(), u1[0].clone()]);
        }
    }
    let count = |u: &Z2| others.iter().filter(|y| !dot2(u, y).is_negative()).count();
    at_x + probes.iter().map(count).min().unwrap()
}

pub fn to_pair(p: &Point) -> [Q; 2] {
    [p[0].clone(), p[1].clone()]
}

pub fn cross3(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Depth of a line in space: project along the line with two cross products
/// and take the planar depth of the image.
pub fn line_depth_3d(points: &[Point], base: &Point, dir: &Point) -> usize {
    let v = dir.coords();
    let e = (0..3)
        .map(|k| {
            let mut e = vec![Q::zero(); 3];
            e[k] = Q::one();
            e
        })
        .find(|e| cross3(v, e).iter().any(|c| !c.is_zero()))
        .unwrap();
    let r1 = cross3(v, &e);
    let r2 = cross3(v, &r1);
    let img = |p: &Point| [dot(&r1, p.coords()), dot(&r2, p.coords())];
    let pts: Vec<[Q; 2]> = points.iter().map(img).collect();
    sweep_depth_2d(&pts, &img(base))
}

/// Grid constants computed from scratch: `K_0 = 2d`, `K_i = K_{i-1}^m`.
pub fn grid_constants(d: usize, m: usize) -> Vec<BigInt> {
    let mut k = vec![BigInt::from(2 * d)];
    for i in 1..d {
        k.push(num::pow(k[i - 1].clone(), m));
    }
    k
}
