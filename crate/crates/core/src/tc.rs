//! Topological complexity of ordered configuration spaces of Euclidean space
//! with `m` punctures. The same value serves the closed disk and any sphere
//! world with `m` obstacles, since all three configuration spaces are
//! homotopy equivalent to the punctured Euclidean one.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum TcError {
    #[error("formula needs n >= 2 and k >= 2, got n = {n}, k = {k}")]
    OutOfRange { n: usize, k: usize },
}

/// Which row of the formula table applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TcRow {
    EvenUnpunctured,
    EvenOnePuncture,
    EvenManyPunctures,
    OddUnpunctured,
    OddPunctured,
}

impl TcRow {
    pub fn select(n: usize, m: usize) -> TcRow {
        match (n.is_multiple_of(2), m) {
            (true, 0) => TcRow::EvenUnpunctured,
            (true, 1) => TcRow::EvenOnePuncture,
            (true, _) => TcRow::EvenManyPunctures,
            (false, 0) => TcRow::OddUnpunctured,
            (false, _) => TcRow::OddPunctured,
        }
    }

    pub fn value(self, k: usize) -> usize {
        match self {
            TcRow::EvenUnpunctured => 2 * k - 2,
            TcRow::EvenOnePuncture => 2 * k,
            TcRow::EvenManyPunctures | TcRow::OddPunctured => 2 * k + 1,
            TcRow::OddUnpunctured => 2 * k - 1,
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            TcRow::EvenUnpunctured => "2k-2",
            TcRow::EvenOnePuncture => "2k",
            TcRow::EvenManyPunctures | TcRow::OddPunctured => "2k+1",
            TcRow::OddUnpunctured => "2k-1",
        }
    }

    pub fn condition(self) -> &'static str {
        match self {
            TcRow::EvenUnpunctured => "n even, m = 0",
            TcRow::EvenOnePuncture => "n even, m = 1",
            TcRow::EvenManyPunctures => "n even, m >= 2",
            TcRow::OddUnpunctured => "n odd, m = 0",
            TcRow::OddPunctured => "n odd, m >= 1",
        }
    }
}

impl fmt::Display for TcRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: TC = {}", self.condition(), self.formula())
    }
}

/// `TC(F(R^n - Q_m, k))` for `n, k >= 2`.
pub fn tc_value(n: usize, m: usize, k: usize) -> Result<usize, TcError> {
    Ok(tc_row(n, m, k)?.value(k))
}

/// The formula row for `(n, m, k)`, after the range check.
pub fn tc_row(n: usize, m: usize, k: usize) -> Result<TcRow, TcError> {
    if n < 2 || k < 2 {
        return Err(TcError::OutOfRange { n, k });
    }
    Ok(TcRow::select(n, m))
}
