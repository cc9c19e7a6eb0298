//! The stretched grid and the logarithmic map onto the uniform grid.
//!
//! Axis `i` (0-based) uses the base `K_i`, with `K_0 = 2d` and
//! `K_i = K_{i-1}^m`. Grid point `a` is `(K_0^{a_0}, ..., K_{d-1}^{a_{d-1}})`,
//! and `π` sends it to `a / (m - 1)`.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cells::AxisBox;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::stair::Point;

/// Largest denominator accepted for the closeness constant `c`.
pub const MAX_CLOSENESS_DENOM: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridParams {
    pub d: usize,
    pub m: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub k: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl GridParams {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("d must be at least 1".into()));
        }
        if m < 2 {
            return Err(Error::InvalidParameter("m must be at least 2".into()));
        }
        let mut k = vec![BigInt::from(2 * d)];
        for i in 1..d {
            k.push(num::pow(k[i - 1].clone(), m));
        }
        Ok(GridParams { d, m, k })
    }

    /// Number of grid points, `m^d`.
    pub fn n(&self) -> usize {
        self.m.pow(self.d as u32)
    }

    pub fn top(&self, axis: usize) -> BigInt {
        num::pow(self.k[axis].clone(), self.m - 1)
    }

    /// `B = [1, K_0^{m-1}] x ... x [1, K_{d-1}^{m-1}]`.
    pub fn bounding_box(&self) -> AxisBox {
        AxisBox::new(
            vec![Some(Scalar::one()); self.d],
            (0..self.d)
                .map(|i| Some(scalar::from_bigint(self.top(i))))
                .collect(),
        )
        .expect("1 <= K^(m-1)")
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: idx.len(),
            });
        }
        if let Some(&bad) = idx.iter().find(|&&a| a >= self.m) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                max: self.m - 1,
            });
        }
        Ok(())
    }

    pub fn grid_point(&self, idx: &[usize]) -> Result<Point> {
        self.check_index(idx)?;
        Ok(Point::new(
            idx.iter()
                .enumerate()
                .map(|(i, &a)| scalar::from_bigint(num::pow(self.k[i].clone(), a)))
                .collect(),
        ))
    }

    /// All `m^d` grid indices, first axis varying fastest.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|mut code| {
                (0..self.d)
                    .map(|_| {
                        let a = code % self.m;
                        code /= self.m;
                        a
                    })
                    .collect()
            })
            .collect()
    }

    pub fn points(&self) -> Vec<Point> {
        self.indices()
            .iter()
            .map(|idx| self.grid_point(idx).expect("valid index"))
            .collect()
    }

    /// `j` with `value = K_axis^j` for `j` in `0..m`, if any.
    pub fn exponent_of(&self, axis: usize, value: &Scalar) -> Option<usize> {
        if !value.is_integer() || !value.is_positive() {
            return None;
        }
        let mut v = value.to_integer();
        let mut j = 0;
        while !v.is_one() {
            let (q, r) = v.div_rem(&self.k[axis]);
            if !r.is_zero() {
                return None;
            }
            v = q;
            j += 1;
            if j >= self.m {
                return None;
            }
        }
        Some(j)
    }

    /// `π` on grid points.
    pub fn pi_grid(&self, x: &Point) -> Result<Point> {
        x.check_dim(self.d)?;
        let scale = self.m as i64 - 1;
        (0..self.d)
            .map(|i| {
                self.exponent_of(i, &x[i])
                    .map(|j| scalar::ratio(j as i64, scale))
                    .ok_or_else(|| Error::NotGridAligned {
                        axis: i,
                        value: x[i].to_string(),
                    })
            })
            .collect::<Result<Vec<_>>>()
            .map(Point::new)
    }

    fn aligned_exponent(&self, axis: usize, u: &Scalar, lo: i64, hi: i64) -> Result<i64> {
        let j = u * scalar::int(self.m as i64 - 1);
        let bad = || Error::NotGridAligned {
            axis,
            value: u.to_string(),
        };
        if !j.is_integer() {
            return Err(bad());
        }
        let j = j.to_integer().to_i64().ok_or_else(bad)?;
        if j < lo || j > hi {
            return Err(bad());
        }
        Ok(j)
    }

    /// Inverse of `π` on `{0, 1/(m-1), ..., 1}^d`.
    pub fn pi_inv(&self, u: &Point) -> Result<Point> {
        self.pi_inv_range(u, 0, self.m as i64 - 1)
    }

    /// Inverse of `π` on aligned coordinates one step outside the unit cube as
    /// well, so exponents run over `-1..=m` and `K^{-1}` is the rational `1/K`.
    pub fn pi_inv_extended(&self, u: &Point) -> Result<Point> {
        self.pi_inv_range(u, -1, self.m as i64)
    }

    fn pi_inv_range(&self, u: &Point, lo: i64, hi: i64) -> Result<Point> {
        u.check_dim(self.d)?;
        (0..self.d)
            .map(|i| {
                let j = self.aligned_exponent(i, &u[i], lo, hi)?;
                let base = scalar::from_bigint(self.k[i].clone());
                Ok(if j >= 0 {
                    num::pow(base, j as usize)
                } else {
                    Scalar::one() / num::pow(base, (-j) as usize)
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Point::new)
    }

    /// Whether `|π(x)_i - π(y)_i| <= c/(m-1)` on one axis.
    ///
    /// Decided without logarithms: the condition is `max/min <= K_i^c`, and for
    /// `c = p/q` that is `(max/min)^q <= K_i^p`. Equality counts as close.
    pub fn c_close_axis(&self, x: &Point, y: &Point, axis: usize, c: &Scalar) -> Result<bool> {
        x.check_dim(self.d)?;
        y.check_dim(self.d)?;
        if axis >= self.d {
            return Err(Error::IndexOutOfRange {
                index: axis,
                max: self.d - 1,
            });
        }
        if c.is_negative() {
            return Err(Error::InvalidParameter(
                "closeness constant must be nonnegative".into(),
            ));
        }
        let q = c
            .denom()
            .to_u64()
            .filter(|&q| q <= MAX_CLOSENESS_DENOM)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "closeness denominator above {MAX_CLOSENESS_DENOM}"
                ))
            })?;
        let p = c
            .numer()
            .to_usize()
            .ok_or_else(|| Error::InvalidParameter("closeness constant too large".into()))?;
        let (a, b) = (&x[axis], &y[axis]);
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::InvalidParameter(
                "closeness needs positive coordinates".into(),
            ));
        }
        let ratio = if a >= b { a / b } else { b / a };
        let lhs = num::pow(ratio, q as usize);
        let rhs = scalar::from_bigint(num::pow(self.k[axis].clone(), p));
        Ok(lhs <= rhs)
    }

    pub fn c_close(&self, x: &Point, y: &Point, c: &Scalar) -> Result<bool> {
        for i in 0..self.d {
            if !self.c_close_axis(x, y, i, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Far in every coordinate.
    pub fn c_far(&self, x: &Point, y: &Point, c: &Scalar) -> Result<bool> {
        for i in 0..self.d {
            if self.c_close_axis(x, y, i, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersects the segment from grid point `a` (layer 0) to grid point `b`
    /// (layer `i >= 1`) with the hyperplane of layer `i - 1`, and checks that
    /// the intersection is within distance 1 of `a` in every horizontal coordinate.
    pub fn lemma1_check(&self, a: &[usize], b: &[usize]) -> Result<bool> {
        let d = self.d;
        if a[d - 1] != 0 || b[d - 1] == 0 {
            return Err(Error::Precondition(
                "need a at layer 0 and b above it".into(),
            ));
        }
        let pa = self.grid_point(a)?;
        let pb = self.grid_point(b)?;
        let i = b[d - 1];
        let kd = scalar::from_bigint(self.k[d - 1].clone());
        let t = (num::pow(kd.clone(), i - 1) - Scalar::one()) / (num::pow(kd, i) - Scalar::one());
        Ok((0..d - 1).all(|j| {
            let c = &pa[j] + &t * (&pb[j] - &pa[j]);
            (c - &pa[j]).abs() <= Scalar::one()
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn constants() {
        let g = GridParams::new(2, 3).unwrap();
        assert_eq!(g.k, vec![BigInt::from(4), BigInt::from(64)]);
        let g = GridParams::new(3, 3).unwrap();
        assert_eq!(g.k[2], BigInt::from(10077696));
        assert!(GridParams::new(2, 1).is_err());
    }

    #[test]
    fn grid_points() {
        let g = GridParams::new(2, 3).unwrap();
        assert_eq!(g.grid_point(&[0, 0]).unwrap(), Point::from_ints(&[1, 1]));
        assert_eq!(g.grid_point(&[2, 1]).unwrap(), Point::from_ints(&[16, 64]));
        assert!(g.grid_point(&[3, 0]).is_err());
        let g = GridParams::new(3, 3).unwrap();
        assert_eq!(
            g.grid_point(&[1, 1, 1]).unwrap(),
            Point::from_ints(&[6, 216, 10077696])
        );
    }

    #[test]
    fn pi_round_trip() {
        let g = GridParams::new(2, 3).unwrap();
        assert_eq!(
            g.pi_grid(&Point::from_ints(&[16, 64])).unwrap(),
            Point::new(vec![int(1), ratio(1, 2)])
        );
        assert!(g.pi_grid(&Point::from_ints(&[3, 1])).is_err());
        assert_eq!(
            g.pi_inv(&Point::new(vec![int(1), ratio(1, 2)])).unwrap(),
            Point::from_ints(&[16, 64])
        );
        assert!(g.pi_inv(&Point::new(vec![ratio(1, 3), int(0)])).is_err());
        for p in g.points() {
            assert_eq!(g.pi_inv(&g.pi_grid(&p).unwrap()).unwrap(), p);
        }
    }

    #[test]
    fn extended_inverse_reaches_one_step_outside() {
        let g = GridParams::new(2, 3).unwrap();
        let u = Point::new(vec![ratio(-1, 2), ratio(3, 2)]);
        assert_eq!(
            g.pi_inv_extended(&u).unwrap(),
            Point::new(vec![ratio(1, 4), int(262144)])
        );
        assert!(g.pi_inv(&u).is_err());
    }

    #[test]
    fn closeness() {
        let g = GridParams::new(2, 3).unwrap();
        let x = Point::from_ints(&[1, 1]);
        let y = Point::from_ints(&[16, 64]);
        assert!(!g.c_close_axis(&x, &y, 0, &int(1)).unwrap());
        assert!(g.c_close_axis(&x, &y, 1, &int(1)).unwrap());
        assert!(!g.c_far(&x, &y, &int(1)).unwrap());
        assert!(!g.c_close(&x, &y, &int(1)).unwrap());
        assert!(g.c_close(&x, &x, &int(0)).unwrap());
        assert!(g.c_close_axis(&x, &y, 0, &ratio(1, 65)).is_err());
        // 8 = 4^(3/2) sits exactly at distance 3/2 steps
        assert!(g
            .c_close_axis(&x, &Point::from_ints(&[8, 1]), 0, &ratio(3, 2))
            .unwrap());
        assert!(!g
            .c_close_axis(&x, &Point::from_ints(&[9, 1]), 0, &ratio(3, 2))
            .unwrap());
    }

    #[test]
    fn lemma1_examples() {
        let g = GridParams::new(2, 3).unwrap();
        assert!(g.lemma1_check(&[0, 0], &[2, 2]).unwrap());
        assert!(g.lemma1_check(&[1, 0], &[1, 2]).unwrap());
        assert!(g.lemma1_check(&[1, 1], &[1, 2]).is_err());
    }
}
