//! Piecewise-constant functions on equidistant grids over `[0, T]`.
//!
//! A [`StepFunction`] with `N` cells takes `values[i]` on the open cell
//! `(i·T/N, (i+1)·T/N)` and is implicitly zero on `(-∞, 0]`, so a nonzero
//! first value is a jump at time 0 and counts towards the total variation.
//! Jumps at `T` are never counted.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, from_usize, lcm, serde_rational, serde_rational_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StepFunctionJson", into = "StepFunctionJson")]
pub struct StepFunction {
    horizon: Rational,
    values: Vec<Rational>,
}

/// Wire form: `{"T":"p/q","N":n,"values":["p/q",...]}`.
#[derive(Serialize, Deserialize)]
struct StepFunctionJson {
    #[serde(rename = "T", with = "serde_rational")]
    horizon: Rational,
    #[serde(rename = "N")]
    cells: usize,
    #[serde(with = "serde_rational_vec")]
    values: Vec<Rational>,
}

impl TryFrom<StepFunctionJson> for StepFunction {
    type Error = Error;

    fn try_from(json: StepFunctionJson) -> Result<Self> {
        if json.values.len() != json.cells {
            return Err(Error::GridMismatch(format!(
                "N = {} but {} values given (only equidistant grids are supported)",
                json.cells,
                json.values.len()
            )));
        }
        StepFunction::new(json.horizon, json.values)
    }
}

impl From<StepFunction> for StepFunctionJson {
    fn from(f: StepFunction) -> Self {
        StepFunctionJson { cells: f.values.len(), horizon: f.horizon, values: f.values }
    }
}

/// A single jump of a step function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jump {
    pub position: Rational,
    pub delta: Rational,
}

/// Ordered jumps of a step function, including one at position 0 when the
/// function leaves the zero history immediately.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SwitchList {
    pub jumps: Vec<Jump>,
}

impl SwitchList {
    /// Rebuild the step function on an `N`-cell grid over `[0, T]`.
    pub fn reconstruct(&self, horizon: &Rational, cells: usize) -> Result<StepFunction> {
        let width = horizon / from_usize(cells.max(1));
        let mut values = vec![Rational::zero(); cells];
        let mut last: Option<&Rational> = None;
        for jump in &self.jumps {
            if last.is_some_and(|p| &jump.position <= p) {
                return Err(Error::domain("switch positions must be strictly increasing"));
            }
            last = Some(&jump.position);
            let cell = &jump.position / &width;
            if !cell.is_integer() || cell.is_negative() || cell >= from_usize(cells) {
                return Err(Error::domain(format!(
                    "switch at {} is not a grid point in [0, T)",
                    format_rational(&jump.position)
                )));
            }
            let start = crate::rational::to_usize(&cell).expect("checked above");
            for v in &mut values[start..] {
                *v += &jump.delta;
            }
        }
        StepFunction::new(horizon.clone(), values)
    }
}

impl StepFunction {
    pub fn new(horizon: Rational, values: Vec<Rational>) -> Result<Self> {
        if !horizon.is_positive() {
            return Err(Error::domain(format!("horizon T = {} must be positive", format_rational(&horizon))));
        }
        if values.is_empty() {
            return Err(Error::domain("a step function needs at least one cell"));
        }
        Ok(StepFunction { horizon, values })
    }

    pub fn zeros(horizon: Rational, cells: usize) -> Result<Self> {
        Self::new(horizon, vec![Rational::zero(); cells])
    }

    pub fn horizon(&self) -> &Rational {
        &self.horizon
    }

    /// Number of grid cells `N`.
    pub fn cells(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn cell_width(&self) -> Rational {
        &self.horizon / from_usize(self.cells())
    }

    /// Piecewise averages on a coarser grid with `cells | self.cells()`.
    pub fn coarsen(&self, cells: usize) -> Result<StepFunction> {
        if cells == 0 || !self.cells().is_multiple_of(cells) {
            return Err(Error::GridMismatch(format!("{cells} does not divide {}", self.cells())));
        }
        let block = self.cells() / cells;
        let scale = from_usize(block).recip();
        let values = self
            .values
            .chunks(block)
            .map(|chunk| chunk.iter().fold(Rational::zero(), |acc, v| acc + v) * &scale)
            .collect();
        Ok(StepFunction { horizon: self.horizon.clone(), values })
    }

    /// Same function on a grid `factor` times finer.
    ///
    /// # Panics
    /// If `factor` is zero.
    pub fn refine(&self, factor: usize) -> StepFunction {
        assert!(factor >= 1, "refinement factor must be positive");
        let values = self
            .values
            .iter()
            .flat_map(|v| std::iter::repeat_n(v.clone(), factor))
            .collect();
        StepFunction { horizon: self.horizon.clone(), values }
    }

    /// `|v_1| + Σ |v_i − v_{i−1}|`: the jump out of the zero history counts.
    pub fn total_variation(&self) -> Rational {
        let mut prev = Rational::zero();
        let mut tv = Rational::zero();
        for v in &self.values {
            tv += (v - &prev).abs();
            prev = v.clone();
        }
        tv
    }

    /// Running positive and negative variation, so that
    /// `self = plus − minus` and both parts are nondecreasing.
    pub fn jordan(&self) -> (StepFunction, StepFunction) {
        let mut prev = Rational::zero();
        let (mut up, mut down) = (Rational::zero(), Rational::zero());
        let mut plus = Vec::with_capacity(self.cells());
        let mut minus = Vec::with_capacity(self.cells());
        for v in &self.values {
            let d = v - &prev;
            if d.is_positive() {
                up += &d;
            } else {
                down -= &d;
            }
            plus.push(up.clone());
            minus.push(down.clone());
            prev = v.clone();
        }
        (
            StepFunction { horizon: self.horizon.clone(), values: plus },
            StepFunction { horizon: self.horizon.clone(), values: minus },
        )
    }

    /// Squared L² distance, computed exactly on the least common grid.
    pub fn l2_dist_sq(&self, other: &StepFunction) -> Result<Rational> {
        if self.horizon != other.horizon {
            return Err(Error::HorizonMismatch {
                left: format_rational(&self.horizon),
                right: format_rational(&other.horizon),
            });
        }
        let common = lcm(self.cells(), other.cells());
        let a = self.refine(common / self.cells());
        let b = other.refine(common / other.cells());
        let sum = a
            .values
            .iter()
            .zip(&b.values)
            .fold(Rational::zero(), |acc, (x, y)| {
                let d = x - y;
                acc + &d * &d
            });
        Ok(sum * &self.horizon / from_usize(common))
    }

    pub fn switching_points(&self) -> SwitchList {
        let width = self.cell_width();
        let mut prev = Rational::zero();
        let mut jumps = Vec::new();
        for (i, v) in self.values.iter().enumerate() {
            if *v != prev {
                jumps.push(Jump { position: &width * from_usize(i), delta: v - &prev });
            }
            prev = v.clone();
        }
        SwitchList { jumps }
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// The same function represented on an `cells`-cell grid, if it is
    /// constant on every cell of that grid.
    pub fn on_grid(&self, cells: usize) -> Option<StepFunction> {
        if cells == 0 {
            return None;
        }
        let common = lcm(self.cells(), cells);
        let fine = self.refine(common / self.cells());
        let block = common / cells;
        let mut values = Vec::with_capacity(cells);
        for chunk in fine.values.chunks(block) {
            if chunk.iter().any(|v| *v != chunk[0]) {
                return None;
            }
            values.push(chunk[0].clone());
        }
        Some(StepFunction { horizon: self.horizon.clone(), values })
    }

    /// Equality as functions, i.e. on a common refinement.
    pub fn same_function(&self, other: &StepFunction) -> bool {
        self.horizon == other.horizon && self.l2_dist_sq(other).is_ok_and(|d| d.is_zero())
    }
}
