//! Explicit evaluation tables over the domain `1..=M`.

use std::fmt;

use crate::error::{Error, Result};
use crate::evaluation::Evaluation;

fn check_value(size: usize, value: usize) -> Result<()> {
    if value == 0 || value > size {
        return Err(Error::Domain(format!("value {value} outside 1..={size}")));
    }
    Ok(())
}

/// A unary function `D -> E`, indexed by domain value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnaryTable {
    values: Vec<Evaluation>,
}

impl UnaryTable {
    pub fn new(values: Vec<Evaluation>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("unary table must be non-empty".into()));
        }
        Ok(UnaryTable { values })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize) -> Evaluation) -> Self {
        UnaryTable {
            values: (1..=size).map(&mut f).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// Panics if `x` is outside `1..=size`.
    pub fn get(&self, x: usize) -> &Evaluation {
        &self.values[x - 1]
    }

    pub fn try_get(&self, x: usize) -> Result<&Evaluation> {
        check_value(self.size(), x)?;
        Ok(self.get(x))
    }

    pub fn values(&self) -> &[Evaluation] {
        &self.values
    }
}

/// A binary function `D x D -> E` stored row-major: rows are indexed by the
/// first argument, columns by the second.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryTable {
    size: usize,
    values: Vec<Evaluation>,
}

impl BinaryTable {
    pub fn new(size: usize, values: Vec<Evaluation>) -> Result<Self> {
        if size == 0 || values.len() != size * size {
            return Err(Error::Domain(format!(
                "binary table over {size} values needs {} entries, got {}",
                size * size,
                values.len()
            )));
        }
        Ok(BinaryTable { size, values })
    }

    pub fn from_rows(rows: Vec<Vec<Evaluation>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Domain("binary table must be square".into()));
        }
        BinaryTable::new(size, rows.into_iter().flatten().collect())
    }

    /// Convenience for tests and literals: integer rows, `None` for infinity.
    pub fn from_integers(rows: &[&[Option<u64>]]) -> Result<Self> {
        BinaryTable::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|v| v.map_or_else(Evaluation::infinite, Evaluation::from_integer))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Evaluation) -> Self {
        let mut values = Vec::with_capacity(size * size);
        for x in 1..=size {
            for y in 1..=size {
                values.push(f(x, y));
            }
        }
        BinaryTable { size, values }
    }

    pub fn zeros(size: usize) -> Self {
        BinaryTable::from_fn(size, |_, _| Evaluation::zero())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    fn index(&self, x: usize, y: usize) -> usize {
        debug_assert!((1..=self.size).contains(&x) && (1..=self.size).contains(&y));
        (x - 1) * self.size + (y - 1)
    }

    /// Panics if `x` or `y` is outside `1..=size`.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> &Evaluation {
        &self.values[self.index(x, y)]
    }

    pub fn try_get(&self, x: usize, y: usize) -> Result<&Evaluation> {
        check_value(self.size, x)?;
        check_value(self.size, y)?;
        Ok(self.get(x, y))
    }

    pub fn set(&mut self, x: usize, y: usize, value: Evaluation) {
        let i = self.index(x, y);
        self.values[i] = value;
    }

    pub fn row(&self, x: usize) -> &[Evaluation] {
        let start = (x - 1) * self.size;
        &self.values[start..start + self.size]
    }

    pub fn values(&self) -> &[Evaluation] {
        &self.values
    }

    pub fn transpose(&self) -> BinaryTable {
        BinaryTable::from_fn(self.size, |x, y| self.get(y, x).clone())
    }

    /// The unary function `x -> self(x, x)`.
    pub fn diagonal(&self) -> UnaryTable {
        UnaryTable::from_fn(self.size, |x| self.get(x, x).clone())
    }

    /// Pointwise aggregation of two tables of equal size.
    pub fn pointwise_add(&self, other: &BinaryTable) -> Result<BinaryTable> {
        if self.size != other.size {
            return Err(Error::Domain("table sizes differ".into()));
        }
        Ok(BinaryTable {
            size: self.size,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn has_infinite(&self) -> bool {
        self.values.iter().any(Evaluation::is_infinite)
    }
}

impl fmt::Display for BinaryTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 1..=self.size {
            let row: Vec<String> = self.row(x).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A k-ary table over `1..=M`, row-major with the first coordinate most
/// significant. Only used for the general submodularity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaryTable {
    arity: usize,
    size: usize,
    values: Vec<Evaluation>,
}

impl KaryTable {
    pub fn new(arity: usize, size: usize, values: Vec<Evaluation>) -> Result<Self> {
        let expected = size
            .checked_pow(arity as u32)
            .ok_or_else(|| Error::TooLarge(format!("{size}^{arity} entries")))?;
        if arity == 0 || size == 0 || values.len() != expected {
            return Err(Error::Domain(format!(
                "{arity}-ary table over {size} values needs {expected} entries, got {}",
                values.len()
            )));
        }
        Ok(KaryTable { arity, size, values })
    }

    pub fn from_fn(arity: usize, size: usize, mut f: impl FnMut(&[usize]) -> Evaluation) -> Result<Self> {
        let count = size
            .checked_pow(arity as u32)
            .ok_or_else(|| Error::TooLarge(format!("{size}^{arity} entries")))?;
        let mut tuple = vec![1; arity];
        let mut values = Vec::with_capacity(count);
        for i in 0..count {
            decode_tuple(i, size, &mut tuple);
            values.push(f(&tuple));
        }
        KaryTable::new(arity, size, values)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, tuple: &[usize]) -> &Evaluation {
        &self.values[encode_tuple(tuple, self.size)]
    }

    pub(crate) fn get_index(&self, index: usize) -> &Evaluation {
        &self.values[index]
    }
}

impl From<&UnaryTable> for KaryTable {
    fn from(t: &UnaryTable) -> Self {
        KaryTable {
            arity: 1,
            size: t.size(),
            values: t.values().to_vec(),
        }
    }
}

impl From<&BinaryTable> for KaryTable {
    fn from(t: &BinaryTable) -> Self {
        KaryTable {
            arity: 2,
            size: t.size(),
            values: t.values().to_vec(),
        }
    }
}

/// Writes the tuple (1-based values) with lexicographic rank `index`.
pub(crate) fn decode_tuple(mut index: usize, size: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % size + 1;
        index /= size;
    }
}

pub(crate) fn encode_tuple(tuple: &[usize], size: usize) -> usize {
    tuple.iter().fold(0, |acc, &v| acc * size + (v - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_wrong_dimensions() {
        assert!(BinaryTable::new(2, vec![Evaluation::zero(); 3]).is_err());
        assert!(BinaryTable::from_integers(&[&[Some(1), Some(2)], &[Some(3)]]).is_err());
        assert!(UnaryTable::new(vec![]).is_err());
        assert!(KaryTable::new(3, 2, vec![Evaluation::zero(); 7]).is_err());
    }

    #[test]
    fn indexing_is_row_major() {
        let t = BinaryTable::from_fn(3, |x, y| Evaluation::from_integer((10 * x + y) as u64));
        assert_eq!(t.get(2, 3), &Evaluation::from_integer(23));
        assert_eq!(t.transpose().get(2, 3), &Evaluation::from_integer(32));
        assert_eq!(t.diagonal().get(3), &Evaluation::from_integer(33));
        assert!(t.try_get(0, 1).is_err());
        assert!(t.try_get(1, 4).is_err());
    }

    #[test]
    fn tuple_codec() {
        let mut buf = [0; 3];
        for i in 0..27 {
            decode_tuple(i, 3, &mut buf);
            assert_eq!(encode_tuple(&buf, 3), i);
        }
        decode_tuple(5, 3, &mut buf);
        assert_eq!(buf, [1, 2, 3]);
    }
}
