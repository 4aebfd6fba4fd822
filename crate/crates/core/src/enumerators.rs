//! Weight and distance enumerators, Krawtchouk polynomials, MacWilliams
//! transforms and dual distance.
//!
//! All arithmetic is exact. An [`Enumerator`] stores integer numerators
//! together with one positive denominator (`scale`), so the distance
//! enumerator `B_i = #{ordered pairs at distance i} / N` is kept as the pair
//! counts with scale `N`. The coefficient type is any [`ExactInt`]; `i128`
//! covers every code this crate can enumerate, `BigInt` removes the limit.

use std::fmt;

use num_integer::binomial;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gray::{gray_image, BinaryCode};
use crate::ring::RingCode;
use crate::scalar::ExactInt;
use crate::z4::{packed, Z4Code};

/// A finite family of words with a metric, indexed `0..word_count()`.
pub trait MetricCode: Sync {
    /// Largest possible weight or distance.
    fn max_distance(&self) -> usize;
    fn word_count(&self) -> usize;
    /// Weight of word `i` (its distance from the all-zero word).
    fn weight(&self, i: usize) -> usize;
    fn distance(&self, i: usize, j: usize) -> usize;
}

/// A code under the Hamming metric over an alphabet of `alphabet_size`
/// symbols; the word length equals [`MetricCode::max_distance`].
pub trait HammingCode: MetricCode {
    fn alphabet_size(&self) -> usize;
}

impl MetricCode for BinaryCode {
    fn max_distance(&self) -> usize {
        self.length()
    }

    fn word_count(&self) -> usize {
        self.size()
    }

    fn weight(&self, i: usize) -> usize {
        self.packed_words()[i].count_ones() as usize
    }

    fn distance(&self, i: usize, j: usize) -> usize {
        let w = self.packed_words();
        (w[i] ^ w[j]).count_ones() as usize
    }
}

impl HammingCode for BinaryCode {
    fn alphabet_size(&self) -> usize {
        2
    }
}

impl MetricCode for Z4Code {
    fn max_distance(&self) -> usize {
        self.length()
    }

    fn word_count(&self) -> usize {
        self.size()
    }

    fn weight(&self, i: usize) -> usize {
        packed::hamming_weight(self.packed_words()[i])
    }

    fn distance(&self, i: usize, j: usize) -> usize {
        let w = self.packed_words();
        packed::hamming_weight(w[i] ^ w[j])
    }
}

impl HammingCode for Z4Code {
    fn alphabet_size(&self) -> usize {
        4
    }
}

impl MetricCode for RingCode {
    fn max_distance(&self) -> usize {
        self.length()
    }

    fn word_count(&self) -> usize {
        self.size()
    }

    fn weight(&self, i: usize) -> usize {
        self.distance(i, 0)
    }

    fn distance(&self, i: usize, j: usize) -> usize {
        let q = self.ring().order() as u64;
        let w = self.packed_words();
        let (mut a, mut b) = (w[i], w[j]);
        let mut d = 0;
        for _ in 0..self.length() {
            d += usize::from(a % q != b % q);
            a /= q;
            b /= q;
        }
        d
    }
}

impl HammingCode for RingCode {
    fn alphabet_size(&self) -> usize {
        self.ring().order()
    }
}

/// A `Z4` code under the Lee metric (distances up to `2n`).
#[derive(Clone, Copy)]
pub struct LeeMetric<'a>(pub &'a Z4Code);

impl MetricCode for LeeMetric<'_> {
    fn max_distance(&self) -> usize {
        2 * self.0.length()
    }

    fn word_count(&self) -> usize {
        self.0.size()
    }

    fn weight(&self, i: usize) -> usize {
        packed::lee_weight(self.0.packed_words()[i])
    }

    fn distance(&self, i: usize, j: usize) -> usize {
        let w = self.0.packed_words();
        packed::lee_weight(packed::sub(w[i], w[j]))
    }
}

/// Exact coefficients `coefficients[i] / scale`, `i = 0..=max_index`.
#[derive(Clone, Debug)]
pub struct Enumerator<T> {
    coefficients: Vec<T>,
    scale: T,
}

impl<T: ExactInt> Enumerator<T> {
    pub fn new(coefficients: Vec<T>, scale: T) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::OutOfRange(format!("enumerator scale {scale} must be positive")));
        }
        if coefficients.is_empty() {
            return Err(Error::Dimension("enumerator needs at least one coefficient".into()));
        }
        Ok(Enumerator { coefficients, scale })
    }

    pub fn from_counts(counts: &[usize]) -> Self {
        Enumerator { coefficients: counts.iter().map(|&c| T::from_usize_exact(c)).collect(), scale: T::one() }
    }

    pub fn max_index(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn scale(&self) -> &T {
        &self.scale
    }

    pub fn value(&self, i: usize) -> Ratio<T> {
        Ratio::new(self.coefficients[i].clone(), self.scale.clone())
    }

    pub fn values(&self) -> Vec<Ratio<T>> {
        (0..self.coefficients.len()).map(|i| self.value(i)).collect()
    }

    pub fn total(&self) -> Ratio<T> {
        let sum = self.coefficients.iter().cloned().fold(T::zero(), |a, b| a + b);
        Ratio::new(sum, self.scale.clone())
    }

    /// Same values with the numerators and scale divided by their gcd.
    pub fn reduced(&self) -> Self {
        let g = self.coefficients.iter().fold(self.scale.clone(), |g, c| g.gcd(c));
        Enumerator {
            coefficients: self.coefficients.iter().map(|c| c.clone() / g.clone()).collect(),
            scale: self.scale.clone() / g,
        }
    }

    /// Integer values, when every coefficient is integral.
    pub fn integers(&self) -> Option<Vec<T>> {
        self.coefficients
            .iter()
            .map(|c| c.is_multiple_of(&self.scale).then(|| c.clone() / self.scale.clone()))
            .collect()
    }

    /// Smallest index `>= from` with a non-zero coefficient.
    pub fn first_nonzero_from(&self, from: usize) -> Option<usize> {
        (from..self.coefficients.len()).find(|&i| !self.coefficients[i].is_zero())
    }
}

/// Equality of values, independent of the scale.
impl<T: ExactInt> PartialEq for Enumerator<T> {
    fn eq(&self, other: &Self) -> bool {
        self.coefficients.len() == other.coefficients.len()
            && self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .all(|(a, b)| a.clone() * other.scale.clone() == b.clone() * self.scale.clone())
    }
}

impl<T: ExactInt> fmt::Display for Enumerator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", vals.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct EnumeratorRepr {
    coefficients: Vec<String>,
    scale: String,
}

/// Serialized as `{"coefficients": ["1", "0", "3"], "scale": "1"}`; integers
/// are strings so no consumer has to round them.
impl<T: ExactInt> Serialize for Enumerator<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EnumeratorRepr {
            coefficients: self.coefficients.iter().map(T::to_string).collect(),
            scale: self.scale.to_string(),
        }
        .serialize(s)
    }
}

impl<'de, T: ExactInt> Deserialize<'de> for Enumerator<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = EnumeratorRepr::deserialize(d)?;
        let parse = |s: &str| s.parse::<T>().map_err(|_| de::Error::custom(format!("bad integer {s:?}")));
        let coefficients = repr.coefficients.iter().map(|s| parse(s)).collect::<std::result::Result<_, _>>()?;
        Enumerator::new(coefficients, parse(&repr.scale)?).map_err(de::Error::custom)
    }
}

/// `A_i = #{w : weight(w) = i}`.
pub fn weight_enumerator<T: ExactInt>(d: &impl MetricCode) -> Enumerator<T> {
    let mut counts = vec![0usize; d.max_distance() + 1];
    for i in 0..d.word_count() {
        counts[d.weight(i)] += 1;
    }
    Enumerator::from_counts(&counts)
}

pub fn hamming_weight_enumerator<T: ExactInt>(d: &impl HammingCode) -> Enumerator<T> {
    weight_enumerator(d)
}

/// Lee weight enumerator, indexed `0..=2n`. Equal by construction to the
/// Hamming weight enumerator of the Gray image, which is asserted.
pub fn lee_weight_enumerator<T: ExactInt>(c: &Z4Code) -> Enumerator<T> {
    let lee: Enumerator<T> = weight_enumerator(&LeeMetric(c));
    assert_eq!(
        lee,
        hamming_weight_enumerator::<T>(&gray_image(c)),
        "Lee enumerator must match the Gray image's Hamming enumerator"
    );
    lee
}

/// Distances from word `i` to every word, tallied by distance.
pub fn distance_profile(d: &impl MetricCode, i: usize) -> Vec<usize> {
    let mut tally = vec![0usize; d.max_distance() + 1];
    for j in 0..d.word_count() {
        tally[d.distance(i, j)] += 1;
    }
    tally
}

/// `N * B_i` = number of ordered pairs at distance `i`, with scale `N`.
pub fn distance_enumerator<T: ExactInt>(d: &impl MetricCode) -> Result<Enumerator<T>> {
    let n = d.word_count();
    if n == 0 {
        return Err(Error::Dimension("distance enumerator of an empty code".into()));
    }
    let tally = (0..n).into_par_iter().map(|i| distance_profile(d, i)).reduce(
        || vec![0usize; d.max_distance() + 1],
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Enumerator::new(tally.iter().map(|&c| T::from_usize_exact(c)).collect(), T::from_usize_exact(n))
}

/// First word whose distance profile differs from that of word 0.
pub fn distance_invariance_violation(d: &impl MetricCode) -> Option<usize> {
    if d.word_count() == 0 {
        return None;
    }
    let reference = distance_profile(d, 0);
    (1..d.word_count()).into_par_iter().find_first(|&i| distance_profile(d, i) != reference)
}

pub fn is_distance_invariant(d: &impl MetricCode) -> bool {
    distance_invariance_violation(d).is_none()
}

/// `K_k(x; n, q) = sum_j (-1)^j (q-1)^(k-j) C(x, j) C(n-x, k-j)`.
pub fn krawtchouk<T: ExactInt>(k: usize, x: usize, n: usize, q: usize) -> Result<T> {
    if k > n || x > n {
        return Err(Error::OutOfRange(format!("Krawtchouk K_{k}({x}; {n}, {q}) needs k, x <= n")));
    }
    if q < 2 {
        return Err(Error::OutOfRange(format!("alphabet size {q} < 2")));
    }
    let t = T::from_usize_exact;
    let q1 = t(q - 1);
    let mut sum = T::zero();
    for j in 0..=k.min(x) {
        if k - j > n - x {
            continue;
        }
        let term = binomial(t(x), t(j)) * binomial(t(n - x), t(k - j)) * num_traits::pow(q1.clone(), k - j);
        if j % 2 == 0 {
            sum = sum + term;
        } else {
            sum = sum - term;
        }
    }
    Ok(sum)
}

/// `B'_k = (1/N) sum_i B_i K_k(i; n, q)`, kept exact and reduced.
pub fn macwilliams_transform<T: ExactInt>(b: &Enumerator<T>, n: usize, q: usize, size: &T) -> Result<Enumerator<T>> {
    if b.max_index() != n {
        return Err(Error::Dimension(format!("enumerator has max index {}, expected {n}", b.max_index())));
    }
    if !size.is_positive() {
        return Err(Error::OutOfRange(format!("code size {size} must be positive")));
    }
    let kernel = (0..=n)
        .map(|k| (0..=n).map(|i| krawtchouk::<T>(k, i, n, q)).collect::<Result<Vec<T>>>())
        .collect::<Result<Vec<_>>>()?;
    let coefficients = kernel
        .iter()
        .map(|row| row.iter().zip(b.coefficients()).fold(T::zero(), |acc, (kv, bv)| acc + kv.clone() * bv.clone()))
        .collect();
    Ok(Enumerator::new(coefficients, b.scale().clone() * size.clone())?.reduced())
}

/// Index of the first non-zero term after index 0 in the MacWilliams
/// transform of the distance enumerator; `n + 1` when all vanish.
pub fn dual_distance<T: ExactInt>(d: &impl HammingCode) -> Result<usize> {
    if let Some(word) = distance_invariance_violation(d) {
        return Err(Error::NotDistanceInvariant { word });
    }
    let n = d.max_distance();
    let b = distance_enumerator::<T>(d)?;
    let transformed = macwilliams_transform(&b, n, d.alphabet_size(), &T::from_usize_exact(d.word_count()))?;
    Ok(transformed.first_nonzero_from(1).unwrap_or(n + 1))
}

/// Outcome of comparing `|C| LWE_{C^perp}(x, y)` with `LWE_C(x+y, x-y)`
/// coefficient by coefficient (coefficient `j` multiplies `x^(2n-j) y^j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeMacWilliams<T> {
    pub holds: bool,
    /// `(j, |C| * dual coefficient, expanded coefficient)` at the first
    /// mismatch.
    pub first_difference: Option<(usize, T, T)>,
}

fn poly_mul<T: ExactInt>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Coefficients of `sum_i L_i (x+y)^(D-i) (x-y)^i` in powers of `y`.
fn substitute_sum_difference<T: ExactInt>(lee: &[T]) -> Vec<T> {
    let degree = lee.len() - 1;
    let plus = [T::one(), T::one()];
    let minus = [T::one(), -T::one()];
    let mut total = vec![T::zero(); degree + 1];
    for (i, li) in lee.iter().enumerate() {
        if li.is_zero() {
            continue;
        }
        let mut term = vec![li.clone()];
        for _ in 0..degree - i {
            term = poly_mul(&term, &plus);
        }
        for _ in 0..i {
            term = poly_mul(&term, &minus);
        }
        total.iter_mut().zip(term).for_each(|(t, v)| *t = t.clone() + v);
    }
    total
}

/// Checks the MacWilliams identity for Lee weight enumerators by full
/// polynomial expansion.
pub fn check_lee_macwilliams<T: ExactInt>(c: &Z4Code) -> Result<LeeMacWilliams<T>> {
    let dual = c.dual()?;
    let lee = lee_weight_enumerator::<T>(c).integers().expect("counts are integral");
    let dual_lee = lee_weight_enumerator::<T>(&dual).integers().expect("counts are integral");
    let expanded = substitute_sum_difference(&lee);
    let size = T::from_usize_exact(c.size());
    let first_difference = dual_lee
        .iter()
        .zip(&expanded)
        .enumerate()
        .find(|(_, (d, e))| (*d).clone() * size.clone() != **e)
        .map(|(j, (d, e))| (j, (*d).clone() * size.clone(), e.clone()));
    Ok(LeeMacWilliams { holds: first_difference.is_none(), first_difference })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gray::BinaryWord;
    use crate::z4::Z4Word;

    fn binary(words: &[&str]) -> BinaryCode {
        let ws: Vec<BinaryWord> = words.iter().map(|s| s.parse().unwrap()).collect();
        BinaryCode::new(ws[0].len(), &ws).unwrap()
    }

    fn z4(n: usize, rows: &[&str]) -> Z4Code {
        let g: Vec<Z4Word> = rows.iter().map(|r| r.parse().unwrap()).collect();
        Z4Code::from_matrix(n, &g).unwrap()
    }

    fn ints(e: &Enumerator<i128>) -> Vec<i128> {
        e.integers().unwrap()
    }

    /// Coefficient of `z^k` in `(1 + (q-1) z)^(n-x) (1 - z)^x`.
    fn krawtchouk_by_generating_function(k: usize, x: usize, n: usize, q: i128) -> i128 {
        let mut poly = vec![1i128];
        for _ in 0..n - x {
            poly = poly_mul(&poly, &[1, q - 1]);
        }
        for _ in 0..x {
            poly = poly_mul(&poly, &[1, -1]);
        }
        poly.get(k).copied().unwrap_or(0)
    }

    #[test]
    fn krawtchouk_values() {
        for x in 0..=5 {
            assert_eq!(krawtchouk::<i128>(0, x, 5, 4).unwrap(), 1);
        }
        assert_eq!(krawtchouk::<i128>(1, 0, 2, 2).unwrap(), 2);
        assert_eq!(krawtchouk::<i128>(1, 2, 2, 2).unwrap(), -2);
        assert_eq!(krawtchouk::<i128>(2, 2, 2, 2).unwrap(), 1);
        assert!(krawtchouk::<i128>(3, 0, 2, 2).is_err());
        assert!(krawtchouk::<i128>(0, 0, 2, 1).is_err());
    }

    #[test]
    fn krawtchouk_matches_generating_function() {
        for q in [2usize, 3, 4] {
            for n in 0..=8 {
                for k in 0..=n {
                    for x in 0..=n {
                        assert_eq!(
                            krawtchouk::<i128>(k, x, n, q).unwrap(),
                            krawtchouk_by_generating_function(k, x, n, q as i128),
                            "K_{k}({x}; {n}, {q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn weight_enumerators() {
        assert_eq!(ints(&hamming_weight_enumerator(&z4(2, &["11"]))), [1, 0, 3]);
        assert_eq!(ints(&hamming_weight_enumerator(&binary(&["0000", "0101", "1111", "1010"]))), [1, 0, 2, 0, 1]);
        assert_eq!(ints(&hamming_weight_enumerator(&Z4Code::zero_code(3).unwrap())), [1, 0, 0, 0]);
        assert_eq!(ints(&lee_weight_enumerator(&z4(2, &["11"]))), [1, 0, 2, 0, 1]);
        assert_eq!(ints(&lee_weight_enumerator(&z4(2, &["20", "02"]))), [1, 0, 2, 0, 1]);
        assert_eq!(ints(&lee_weight_enumerator(&Z4Code::zero_code(2).unwrap())), [1, 0, 0, 0, 0]);
    }

    #[test]
    fn distance_enumerators() {
        let e = distance_enumerator::<i128>(&binary(&["00", "11"])).unwrap();
        assert_eq!((e.coefficients(), *e.scale()), (&[2, 0, 2][..], 2));
        let e = distance_enumerator::<i128>(&binary(&["00", "01", "10"])).unwrap();
        assert_eq!((e.coefficients(), *e.scale()), (&[3, 4, 2][..], 3));
        assert_eq!(e.total(), Ratio::from_integer(3));
        let e = distance_enumerator::<i128>(&binary(&["0110"])).unwrap();
        assert_eq!(ints(&e), [1, 0, 0, 0, 0]);
    }

    #[test]
    fn transforms() {
        let b = distance_enumerator::<i128>(&binary(&["00", "11"])).unwrap();
        assert_eq!(ints(&macwilliams_transform(&b, 2, 2, &2).unwrap()), [1, 0, 1]);
        let full = binary(&["00", "01", "10", "11"]);
        let w = hamming_weight_enumerator::<i128>(&full);
        assert_eq!(ints(&macwilliams_transform(&w, 2, 2, &4).unwrap()), [1, 0, 0]);
        let zero = Enumerator::<i128>::from_counts(&[1, 0, 0]);
        assert_eq!(ints(&macwilliams_transform(&zero, 2, 2, &1).unwrap()), [1, 2, 1]);
        assert!(macwilliams_transform(&zero, 3, 2, &1).is_err());
    }

    #[test]
    fn non_integral_transform_is_kept_exact() {
        let b = distance_enumerator::<i128>(&binary(&["00", "01", "10"])).unwrap();
        let t = macwilliams_transform(&b, 2, 2, &3).unwrap();
        // B = (1, 4/3, 2/3); B'_1 = (2 + 0 - 4/3) / 3 = 2/9
        assert_eq!(t.value(1), Ratio::new(2, 9));
        assert!(t.integers().is_none());
    }

    #[test]
    fn dual_distances() {
        assert_eq!(dual_distance::<i128>(&binary(&["00", "11"])).unwrap(), 2);
        let full = binary(&["000", "001", "010", "011", "100", "101", "110", "111"]);
        assert_eq!(dual_distance::<i128>(&full).unwrap(), 4);
        let img = gray_image(&z4(2, &["11"]));
        assert_eq!(dual_distance::<i128>(&img).unwrap(), 2);
        assert_eq!(
            dual_distance::<i128>(&binary(&["000", "011", "111"])),
            Err(Error::NotDistanceInvariant { word: 1 })
        );
    }

    #[test]
    fn distance_invariance() {
        assert!(is_distance_invariant(&binary(&["000", "011", "101", "110"])));
        assert!(is_distance_invariant(&gray_image(&z4(3, &["110", "011"]))));
        assert!(!is_distance_invariant(&binary(&["000", "011", "111"])));
        assert!(is_distance_invariant(&LeeMetric(&z4(3, &["123"]))));
    }

    #[test]
    fn lee_macwilliams_examples() {
        for c in [z4(2, &["11"]), Z4Code::full(1).unwrap(), Z4Code::zero_code(2).unwrap()] {
            let r = check_lee_macwilliams::<i128>(&c).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn expansion_of_full_z4() {
        // LWE of Z4^1 is x^2 + 2xy + y^2; substituting gives 4x^2
        assert_eq!(substitute_sum_difference::<i128>(&[1, 2, 1]), [4, 0, 0]);
    }

    #[test]
    fn bigint_agrees_with_i128() {
        use num_bigint::BigInt;
        let img = gray_image(&z4(3, &["121", "022"]));
        let b1 = distance_enumerator::<i128>(&img).unwrap();
        let b2 = distance_enumerator::<BigInt>(&img).unwrap();
        let t1 = macwilliams_transform(&b1, 6, 2, &(img.size() as i128)).unwrap();
        let t2 = macwilliams_transform(&b2, 6, 2, &BigInt::from(img.size())).unwrap();
        let as_strings = |v: &[String]| v.to_vec();
        assert_eq!(
            as_strings(&t1.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            t2.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn serde_round_trip() {
        let e = Enumerator::<i128>::new(vec![3, 4, 2], 3).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"coefficients":["3","4","2"],"scale":"3"}"#);
        let back: Enumerator<i128> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<Enumerator<i128>>(r#"{"coefficients":["1"],"scale":"0"}"#).is_err());
    }
}
