//! Orthogonal-array strength and index, computed straight from the
//! definition: every `t`-column projection must contain each `t`-tuple the
//! same number of times.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest tally table (`f^t` cells) allocated per column subset.
pub const MAX_TALLY: usize = 1 << 20;

/// An `N x k` array over the alphabet `0..f`. Rows may repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Array {
    f: usize,
    k: usize,
    cells: Vec<u8>,
}

impl Array {
    pub fn new(f: usize, k: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        if f == 0 || f > 256 {
            return Err(Error::OutOfRange(format!("alphabet size {f}")));
        }
        let mut cells = Vec::with_capacity(rows.len() * k);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::Dimension(format!("row {i} has {} cells, expected {k}", row.len())));
            }
            if let Some(&s) = row.iter().find(|&&s| s as usize >= f) {
                return Err(Error::OutOfRange(format!("row {i} has symbol {s} >= f = {f}")));
            }
            cells.extend(row);
        }
        Ok(Array { f, k, cells })
    }

    pub fn alphabet(&self) -> usize {
        self.f
    }

    pub fn columns(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> usize {
        self.cells.len().checked_div(self.k).unwrap_or(0)
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.cells[i * self.k..(i + 1) * self.k]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.k.max(1))
    }

    /// New array whose column `j` is column `perm[j]` of this one.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Array> {
        if perm.len() != self.k || !perm.iter().all(|&p| p < self.k) || !perm.iter().all_unique() {
            return Err(Error::Dimension("not a column permutation".into()));
        }
        let rows = self.iter_rows().map(|r| perm.iter().map(|&p| r[p]).collect()).collect();
        Array::new(self.f, self.k, rows)
    }

    /// Applies a symbol bijection per column: `maps[j][s]` replaces `s` in
    /// column `j`.
    pub fn relabel(&self, maps: &[Vec<u8>]) -> Result<Array> {
        if maps.len() != self.k
            || maps
                .iter()
                .any(|m| m.len() != self.f || !m.iter().all_unique() || m.iter().any(|&s| s as usize >= self.f))
        {
            return Err(Error::Dimension("not a per-column symbol bijection".into()));
        }
        let rows =
            self.iter_rows().map(|r| r.iter().enumerate().map(|(j, &s)| maps[j][s as usize]).collect()).collect();
        Array::new(self.f, self.k, rows)
    }
}

/// Why an array is not an orthogonal array of a given strength: a column
/// subset and a tuple whose count differs from `rows / f^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub columns: Vec<usize>,
    pub tuple: Vec<u8>,
    pub observed: usize,
    /// `N` and `f^t`; the required count is their quotient.
    pub rows: usize,
    pub cells: usize,
}

impl Witness {
    /// Recounts the witness tuple against `a`.
    pub fn validate(&self, a: &Array) -> bool {
        let count = a.iter_rows().filter(|r| self.columns.iter().zip(&self.tuple).all(|(&c, &s)| r[c] == s)).count();
        count == self.observed
            && self.rows == a.rows()
            && self.cells == a.alphabet().pow(self.columns.len() as u32)
            && count * self.cells != self.rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OaCheck {
    Holds { index: usize },
    Fails(Witness),
}

impl OaCheck {
    pub fn index(&self) -> Option<usize> {
        match self {
            OaCheck::Holds { index } => Some(*index),
            OaCheck::Fails(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OaReport {
    pub strength: usize,
    pub index: usize,
    /// Failure at `strength + 1`; absent when the strength is the number of
    /// columns.
    pub witness: Option<Witness>,
}

fn tally_size(f: usize, t: usize) -> Result<usize> {
    match f.checked_pow(t as u32) {
        Some(s) if s <= MAX_TALLY => Ok(s),
        s => Err(Error::budget(
            format!("tally table f^t with f = {f}, t = {t}"),
            s.map_or(u128::MAX, |s| s as u128),
            MAX_TALLY as u128,
        )),
    }
}

/// Checks one column subset; `None` when every tuple count is `N / f^t`.
fn check_subset(a: &Array, cols: &[usize], cells: usize) -> Option<Witness> {
    let mut counts = vec![0usize; cells];
    for r in a.iter_rows() {
        let idx = cols.iter().fold(0usize, |acc, &c| acc * a.f + r[c] as usize);
        counts[idx] += 1;
    }
    let n = a.rows();
    let uniform = |c: usize| c * cells == n;
    if counts.iter().all(|&c| uniform(c)) {
        return None;
    }
    let pick = counts.iter().position(|&c| c == 0).unwrap_or_else(|| counts.iter().position(|&c| !uniform(c)).unwrap());
    let mut tuple = vec![0u8; cols.len()];
    let mut rest = pick;
    for slot in tuple.iter_mut().rev() {
        *slot = (rest % a.f) as u8;
        rest /= a.f;
    }
    Some(Witness { columns: cols.to_vec(), tuple, observed: counts[pick], rows: n, cells })
}

/// Whether `a` is an orthogonal array of strength `t`.
///
/// On failure the witness is taken from the lexicographically least failing
/// column subset; within it, the least missing tuple, or failing that the
/// least tuple with the wrong count.
pub fn is_oa_at(a: &Array, t: usize) -> Result<OaCheck> {
    if t > a.k {
        return Err(Error::OutOfRange(format!("strength {t} exceeds {} columns", a.k)));
    }
    if t == 0 {
        return Ok(OaCheck::Holds { index: a.rows() });
    }
    let cells = tally_size(a.f, t)?;
    let subsets: Vec<Vec<usize>> = (0..a.k).combinations(t).collect();
    let failure = subsets.par_iter().find_map_first(|cols| check_subset(a, cols, cells));
    Ok(match failure {
        Some(w) => OaCheck::Fails(w),
        None => OaCheck::Holds { index: a.rows() / cells },
    })
}

/// Largest `t` for which `a` is an orthogonal array. Strength is downward
/// closed, so the search ascends and stops at the first failure.
pub fn strength(a: &Array) -> Result<OaReport> {
    let mut index = a.rows();
    for t in 1..=a.k {
        match is_oa_at(a, t)? {
            OaCheck::Holds { index: l } => index = l,
            OaCheck::Fails(w) => return Ok(OaReport { strength: t - 1, index, witness: Some(w) }),
        }
    }
    Ok(OaReport { strength: a.k, index, witness: None })
}

/// `f^(t-s) * lambda_t`, checked against the index counted directly at
/// strength `s`.
pub fn index_at(a: &Array, s: usize, t: usize, lambda_t: usize) -> Result<usize> {
    if s > t {
        return Err(Error::OutOfRange(format!("s = {s} exceeds t = {t}")));
    }
    let derived =
        a.f.checked_pow((t - s) as u32)
            .and_then(|p| p.checked_mul(lambda_t))
            .ok_or_else(|| Error::Size("index overflows".into()))?;
    match is_oa_at(a, s)? {
        OaCheck::Holds { index } if index == derived => Ok(derived),
        OaCheck::Holds { index } => {
            Err(Error::Precondition(format!("derived index {derived} disagrees with counted index {index} at s = {s}")))
        }
        OaCheck::Fails(_) => Err(Error::Precondition(format!("array is not an OA of strength {s}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(f: usize, rows: &[&str]) -> Array {
        let rows: Vec<Vec<u8>> = rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
        Array::new(f, rows[0].len(), rows).unwrap()
    }

    #[test]
    fn full_factorial() {
        let rows: Vec<String> = (0..16).map(|i| format!("{}{}", i / 4, i % 4)).collect();
        let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
        let a = arr(4, &rows);
        assert_eq!(is_oa_at(&a, 2).unwrap(), OaCheck::Holds { index: 1 });
        assert_eq!(strength(&a).unwrap(), OaReport { strength: 2, index: 1, witness: None });
    }

    #[test]
    fn diagonal_z4() {
        let a = arr(4, &["00", "11", "22", "33"]);
        assert_eq!(is_oa_at(&a, 1).unwrap(), OaCheck::Holds { index: 1 });
        let OaCheck::Fails(w) = is_oa_at(&a, 2).unwrap() else { panic!() };
        assert_eq!((w.columns.as_slice(), w.tuple.as_slice(), w.observed), (&[0, 1][..], &[0, 1][..], 0));
        assert!(w.validate(&a));
    }

    #[test]
    fn gray_image_rows() {
        let a = arr(2, &["0000", "0101", "1111", "1010"]);
        assert_eq!(is_oa_at(&a, 1).unwrap(), OaCheck::Holds { index: 2 });
        let OaCheck::Fails(w) = is_oa_at(&a, 2).unwrap() else { panic!() };
        // columns 0 and 2 only see 00 and 11
        assert_eq!(w.columns, vec![0, 2]);
        assert_eq!(w.tuple, vec![0, 1]);
        assert_eq!(w.observed, 0);
        assert!(w.validate(&a));
    }

    #[test]
    fn strength_examples() {
        let r = strength(&arr(2, &["000", "111"])).unwrap();
        assert_eq!((r.strength, r.index), (1, 1));
        let all: Vec<String> = (0..8).map(|i| format!("{:03b}", i)).collect();
        let all: Vec<&str> = all.iter().map(String::as_str).collect();
        let r = strength(&arr(2, &all)).unwrap();
        assert_eq!((r.strength, r.index, r.witness), (3, 1, None));
        let r = strength(&arr(4, &["00", "02", "20", "22"])).unwrap();
        assert_eq!((r.strength, r.index), (0, 4));
        assert_eq!(r.witness.unwrap().tuple, vec![1]);
        let r = strength(&arr(2, &["00", "01", "10"])).unwrap();
        assert_eq!(r.strength, 0);
    }

    #[test]
    fn index_relation() {
        let rows: Vec<String> = (0..16).map(|i| format!("{}{}", i / 4, i % 4)).collect();
        let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
        let a = arr(4, &rows);
        assert_eq!(index_at(&a, 1, 2, 1).unwrap(), 4);
        assert_eq!(index_at(&a, 2, 2, 1).unwrap(), 1);
        let all: Vec<String> = (0..8).map(|i| format!("{:03b}", i)).collect();
        let all: Vec<&str> = all.iter().map(String::as_str).collect();
        assert_eq!(index_at(&arr(2, &all), 0, 3, 1).unwrap(), 8);
        assert!(matches!(index_at(&a, 2, 1, 1), Err(Error::OutOfRange(_))));
        assert!(index_at(&a, 1, 2, 2).is_err());
    }

    #[test]
    fn errors() {
        let a = arr(2, &["01"]);
        assert!(matches!(is_oa_at(&a, 3), Err(Error::OutOfRange(_))));
        assert!(matches!(Array::new(2, 2, vec![vec![0, 2]]), Err(Error::OutOfRange(_))));
        assert!(matches!(Array::new(2, 2, vec![vec![0]]), Err(Error::Dimension(_))));
        let wide = Array::new(4, 11, vec![vec![0; 11]]).unwrap();
        assert!(matches!(is_oa_at(&wide, 11), Err(Error::Budget { .. })));
    }
}
