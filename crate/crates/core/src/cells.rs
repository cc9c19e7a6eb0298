//! Axis-aligned boxes and the grid of open cells cut out by finitely many
//! axis-orthogonal hyperplanes.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::stair::Point;

/// A product of intervals; `None` means unbounded on that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisBox {
    lower: Vec<Option<Scalar>>,
    upper: Vec<Option<Scalar>>,
}

impl AxisBox {
    pub fn new(lower: Vec<Option<Scalar>>, upper: Vec<Option<Scalar>>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        for (l, u) in lower.iter().zip(&upper) {
            if let (Some(l), Some(u)) = (l, u) {
                if l > u {
                    return Err(Error::InvalidParameter(format!(
                        "empty interval [{l}, {u}]"
                    )));
                }
            }
        }
        Ok(AxisBox { lower, upper })
    }

    pub fn unbounded(d: usize) -> Self {
        AxisBox {
            lower: vec![None; d],
            upper: vec![None; d],
        }
    }

    pub fn unit_cube(d: usize) -> Self {
        AxisBox {
            lower: vec![Some(Scalar::zero()); d],
            upper: vec![Some(Scalar::one()); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Option<Scalar>] {
        &self.lower
    }

    pub fn upper(&self) -> &[Option<Scalar>] {
        &self.upper
    }

    /// Closed containment.
    pub fn contains(&self, x: &Point) -> bool {
        (0..self.dim()).all(|i| {
            self.lower[i].as_ref().is_none_or(|l| x[i] >= *l)
                && self.upper[i].as_ref().is_none_or(|u| x[i] <= *u)
        })
    }
}

/// One open cell, identified by an interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub representative: Point,
    /// `None` for unbounded cells.
    pub volume: Option<Scalar>,
}

#[derive(Clone, Debug)]
struct AxisCells {
    reps: Vec<Scalar>,
    lengths: Vec<Option<Scalar>>,
}

/// The open cells of `clip` cut by the hyperplanes `x_i = v_i` for every vertex `v`.
#[derive(Clone, Debug)]
pub struct CellDecomposition {
    axes: Vec<AxisCells>,
}

impl CellDecomposition {
    pub fn from_vertices<'a>(
        vertices: impl IntoIterator<Item = &'a Point>,
        clip: &AxisBox,
    ) -> Self {
        let d = clip.dim();
        let mut cuts: Vec<Vec<Scalar>> = vec![Vec::new(); d];
        for v in vertices {
            for (i, c) in cuts.iter_mut().enumerate() {
                c.push(v[i].clone());
            }
        }
        Self::from_cuts(cuts, clip)
    }

    /// Cells from explicit per-axis cut values.
    pub fn from_cuts(cuts: Vec<Vec<Scalar>>, clip: &AxisBox) -> Self {
        let axes = cuts
            .into_iter()
            .enumerate()
            .map(|(i, c)| axis_cells(c, clip.lower[i].as_ref(), clip.upper[i].as_ref()))
            .collect();
        CellDecomposition { axes }
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.reps.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let total = self.len();
        (0..total).map(move |mut code| {
            let mut coords = Vec::with_capacity(self.axes.len());
            let mut volume = Some(Scalar::one());
            for axis in &self.axes {
                let k = code % axis.reps.len();
                code /= axis.reps.len();
                coords.push(axis.reps[k].clone());
                volume = match (volume, &axis.lengths[k]) {
                    (Some(v), Some(l)) => Some(v * l),
                    _ => None,
                };
            }
            Cell {
                representative: Point::new(coords),
                volume,
            }
        })
    }
}

fn axis_cells(mut cuts: Vec<Scalar>, lo: Option<&Scalar>, hi: Option<&Scalar>) -> AxisCells {
    cuts.retain(|c| lo.is_none_or(|l| c > l) && hi.is_none_or(|h| c < h));
    cuts.sort();
    cuts.dedup();
    let mut bounds: Vec<Option<Scalar>> = vec![lo.cloned()];
    bounds.extend(cuts.into_iter().map(Some));
    bounds.push(hi.cloned());
    let mut reps = Vec::new();
    let mut lengths = Vec::new();
    for w in bounds.windows(2) {
        match (&w[0], &w[1]) {
            (Some(a), Some(b)) => {
                if a == b {
                    // degenerate clip interval; keep one representative, zero volume
                    reps.push(a.clone());
                    lengths.push(Some(Scalar::zero()));
                } else {
                    reps.push(scalar::midpoint(a, b));
                    lengths.push(Some(b - a));
                }
            }
            (None, Some(b)) => {
                reps.push(b - Scalar::one());
                lengths.push(None);
            }
            (Some(a), None) => {
                reps.push(a + Scalar::one());
                lengths.push(None);
            }
            (None, None) => {
                reps.push(Scalar::zero());
                lengths.push(None);
            }
        }
    }
    AxisCells { reps, lengths }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn unbounded_line_with_one_cut() {
        let cells =
            CellDecomposition::from_vertices([&Point::from_ints(&[3])], &AxisBox::unbounded(1));
        let reps: Vec<_> = cells.cells().map(|c| c.representative[0].clone()).collect();
        assert_eq!(reps, vec![int(2), int(4)]);
    }

    #[test]
    fn no_cuts_gives_one_cell() {
        let cells = CellDecomposition::from_cuts(vec![vec![], vec![]], &AxisBox::unbounded(2));
        assert_eq!(cells.len(), 1);
        assert_eq!(
            cells.cells().next().unwrap().representative,
            Point::from_ints(&[0, 0])
        );
    }

    #[test]
    fn unit_cube_volumes_sum_to_one() {
        let v = Point::new(vec![ratio(1, 3), ratio(3, 4)]);
        let outside = Point::from_ints(&[5, -2]);
        let cells = CellDecomposition::from_vertices([&v, &outside], &AxisBox::unit_cube(2));
        assert_eq!(cells.len(), 4);
        let total = cells
            .cells()
            .map(|c| c.volume.unwrap())
            .fold(int(0), |a, b| a + b);
        assert_eq!(total, int(1));
    }

    #[test]
    fn box_rejects_inverted_interval() {
        assert!(AxisBox::new(vec![Some(int(1))], vec![Some(int(0))]).is_err());
        assert!(AxisBox::unit_cube(2).contains(&Point::from_ints(&[1, 0])));
        assert!(!AxisBox::unit_cube(2).contains(&Point::from_ints(&[2, 0])));
    }
}
