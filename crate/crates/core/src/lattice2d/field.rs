use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Binary array `Y_{i,j}`, `1 <= i <= rows`, `1 <= j <= cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field2D {
    rows: usize,
    cols: usize,
    cells: Vec<u8>,
}

impl Field2D {
    pub fn new(rows: usize, cols: usize, cells: Vec<u8>) -> Result<Self> {
        if cells.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} cells for a {rows}x{cols} field",
                cells.len()
            )));
        }
        if cells.iter().any(|&c| c > 1) {
            return Err(Error::InvalidArgument("cells must be 0 or 1".into()));
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn filled(rows: usize, cols: usize, letter: u8) -> Self {
        Self {
            rows,
            cols,
            cells: vec![letter.min(1); rows * cols],
        }
    }

    /// iid cells equal to 1 with probability `p`.
    pub fn sample<R: Rng + ?Sized>(rows: usize, cols: usize, p: f64, rng: &mut R) -> Self {
        let cells = (0..rows * cols).map(|_| u8::from(rng.gen::<f64>() < p)).collect();
        Self { rows, cols, cells }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based access.
    #[inline]
    pub fn cell(&self, r: usize, c: usize) -> u8 {
        self.cells[r * self.cols + c]
    }

    pub fn set_cell(&mut self, r: usize, c: usize, letter: u8) {
        self.cells[r * self.cols + c] = letter.min(1);
    }

    /// 1-based `Y_{i,j}`.
    #[inline]
    pub fn y(&self, i: usize, j: usize) -> u8 {
        self.cell(i - 1, j - 1)
    }

    pub fn complement(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            cells: self.cells.iter().map(|c| 1 - c).collect(),
        }
    }
}

impl FromStr for Field2D {
    type Err = Error;

    /// One row per line, characters `0`/`1`; blank lines are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let cols = lines.first().map_or(0, |l| l.len());
        let mut cells = Vec::with_capacity(lines.len() * cols);
        for (k, line) in lines.iter().enumerate() {
            if line.len() != cols {
                return Err(Error::Parse(format!("row {} has {} cells, expected {cols}", k + 1, line.len())));
            }
            for ch in line.chars() {
                cells.push(match ch {
                    '0' => 0,
                    '1' => 1,
                    other => return Err(Error::InvalidLetter(other)),
                });
            }
        }
        Self::new(lines.len(), cols, cells)
    }
}

impl fmt::Display for Field2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.cell(r, c) == 1 { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngSpec;

    #[test]
    fn text_round_trip() {
        let f = Field2D::sample(5, 7, 0.4, &mut RngSpec::new(1, 0).rng());
        assert_eq!(f.to_string().parse::<Field2D>().unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        assert!("010\n01\n".parse::<Field2D>().is_err());
        assert!("012\n".parse::<Field2D>().is_err());
        let f: Field2D = "10\n01\n".parse().unwrap();
        assert_eq!((f.y(1, 1), f.y(1, 2), f.y(2, 1), f.y(2, 2)), (1, 0, 0, 1));
    }
}
