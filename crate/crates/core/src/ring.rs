//! Explicit finite commutative rings with identity, their ideals and
//! annihilators, and linear codes (submodules of `R^n`) over them.
//!
//! Rings are stored as full addition and multiplication tables over element
//! ids `0..|R|`. Id `0` is always the additive identity. Canonical orderings:
//!
//! * `Z<n>`: residue order, id `k` is the residue `k`.
//! * `R1 x R2`: lexicographic pairs, id of `(i, j)` is `i * |R2| + j`.
//! * `R8`: pairs `(x, y)` with `x` in `Z4`, `y` in `Z2`, meaning `x + y*a`;
//!   id `2x + y`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oa::Array;

/// Element id inside a [`FiniteRing`].
pub type Elem = u8;

/// Largest ring order accepted by any constructor.
pub const MAX_RING_ORDER: usize = 64;
/// Largest ring order for which ideals are enumerated.
pub const MAX_IDEAL_RING_ORDER: usize = 16;
/// Default budget for brute-force scans over `R^n` and for code sizes.
pub const MAX_SCAN: u128 = 100_000_000;

#[derive(PartialEq, Eq)]
struct Tables {
    name: String,
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    one: Elem,
    labels: Vec<String>,
}

/// A finite commutative ring with identity, given by its tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FiniteRing {
    t: Arc<Tables>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.order == other.t.order && self.t.add == other.t.add && self.t.mul == other.t.mul)
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.t.name, self.t.order)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.t.name)
    }
}

impl FiniteRing {
    /// Builds a ring from square tables and checks every ring axiom
    /// exhaustively. Element `0` must be the additive identity.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        one: Elem,
    ) -> Result<Self> {
        let order = add.len();
        if order == 0 || order > MAX_RING_ORDER {
            return Err(Error::Size(format!("ring order {order} outside 1..={MAX_RING_ORDER}")));
        }
        if labels.len() != order || mul.len() != order {
            return Err(Error::Dimension("tables and labels must all have |R| rows".into()));
        }
        let flatten = |tab: Vec<Vec<Elem>>, what: &str| -> Result<Vec<Elem>> {
            let mut flat = Vec::with_capacity(order * order);
            for row in tab {
                if row.len() != order {
                    return Err(Error::Dimension(format!("{what} table row has wrong length")));
                }
                if let Some(&bad) = row.iter().find(|&&e| e as usize >= order) {
                    return Err(Error::OutOfRange(format!("{what} table entry {bad}")));
                }
                flat.extend(row);
            }
            Ok(flat)
        };
        let add = flatten(add, "addition")?;
        let mul = flatten(mul, "multiplication")?;
        if one as usize >= order {
            return Err(Error::OutOfRange(format!("identity id {one}")));
        }
        let mut neg = vec![0; order];
        for a in 0..order {
            match (0..order).find(|&b| add[a * order + b] == 0) {
                Some(b) => neg[a] = b as Elem,
                None => return Err(Error::RingAxiom(format!("element {a} has no additive inverse"))),
            }
        }
        let ring = FiniteRing { t: Arc::new(Tables { name: name.into(), order, add, mul, neg, one, labels }) };
        ring.check_axioms()?;
        Ok(ring)
    }

    /// `Z/nZ` for `2 <= n <= 16`.
    pub fn zn(n: usize) -> Result<Self> {
        if !(2..=16).contains(&n) {
            return Err(Error::Size(format!("Z{n}: modulus must be in 2..=16")));
        }
        let table = |op: fn(usize, usize) -> usize| -> Vec<Vec<Elem>> {
            (0..n).map(|a| (0..n).map(|b| (op(a, b) % n) as Elem).collect()).collect()
        };
        Self::from_tables(
            format!("Z{n}"),
            (0..n).map(|k| k.to_string()).collect(),
            table(|a, b| a + b),
            table(|a, b| a * b),
            1,
        )
    }

    /// Direct product with componentwise operations.
    pub fn product(r1: &FiniteRing, r2: &FiniteRing) -> Result<Self> {
        let (o1, o2) = (r1.order(), r2.order());
        if o1 * o2 > MAX_RING_ORDER {
            return Err(Error::Size(format!("{r1}x{r2} has order {} > {MAX_RING_ORDER}", o1 * o2)));
        }
        let id = |i: usize, j: usize| (i * o2 + j) as Elem;
        let split = |e: usize| (e / o2, e % o2);
        let order = o1 * o2;
        let table = |op1: &dyn Fn(Elem, Elem) -> Elem, op2: &dyn Fn(Elem, Elem) -> Elem| {
            (0..order)
                .map(|a| {
                    let (a1, a2) = split(a);
                    (0..order)
                        .map(|b| {
                            let (b1, b2) = split(b);
                            id(op1(a1 as Elem, b1 as Elem) as usize, op2(a2 as Elem, b2 as Elem) as usize)
                        })
                        .collect()
                })
                .collect::<Vec<Vec<Elem>>>()
        };
        let add = table(&|a, b| r1.add(a, b), &|a, b| r2.add(a, b));
        let mul = table(&|a, b| r1.mul(a, b), &|a, b| r2.mul(a, b));
        let labels = (0..order)
            .map(|e| {
                let (i, j) = split(e);
                format!("({},{})", r1.label(i as Elem), r2.label(j as Elem))
            })
            .collect();
        Self::from_tables(format!("{r1}x{r2}"), labels, add, mul, id(r1.one() as usize, r2.one() as usize))
    }

    /// The order-8 ring `Z4[a]` with `2a = a^2 = 0`.
    pub fn r8() -> Self {
        let id = |x: usize, y: usize| (2 * (x % 4) + (y % 2)) as Elem;
        let split = |e: usize| (e / 2, e % 2);
        let add = (0..8)
            .map(|p| {
                let (x1, y1) = split(p);
                (0..8)
                    .map(|q| {
                        let (x2, y2) = split(q);
                        id(x1 + x2, y1 + y2)
                    })
                    .collect()
            })
            .collect();
        let mul = (0..8)
            .map(|p| {
                let (x1, y1) = split(p);
                (0..8)
                    .map(|q| {
                        let (x2, y2) = split(q);
                        id(x1 * x2, x1 * y2 + x2 * y1)
                    })
                    .collect()
            })
            .collect();
        let labels = (0..8)
            .map(|e| match split(e) {
                (0, 0) => "0".to_string(),
                (0, 1) => "a".to_string(),
                (x, 0) => x.to_string(),
                (x, _) => format!("{x}+a"),
            })
            .collect();
        Self::from_tables("R8", labels, add, mul, id(1, 0)).expect("R8 tables satisfy the ring axioms")
    }

    /// Parses `Z<n>`, `Z<a>xZ<b>` or `R8`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let bad = || Error::parse(0, format!("unsupported ring spec {spec:?} (use Z<n>, Z<a>xZ<b> or R8)"));
        if spec.eq_ignore_ascii_case("r8") {
            return Ok(Self::r8());
        }
        let modulus = |s: &str| -> Result<usize> {
            let digits = s.strip_prefix('Z').or_else(|| s.strip_prefix('z')).ok_or_else(bad)?;
            let n: usize = digits.parse().map_err(|_| bad())?;
            if !(2..=16).contains(&n) {
                return Err(Error::parse(0, format!("ring spec {spec:?}: modulus must be in 2..=16")));
            }
            Ok(n)
        };
        match spec.split_once(['x', 'X']) {
            Some((a, b)) => Self::product(&Self::zn(modulus(a)?)?, &Self::zn(modulus(b)?)?),
            None => Self::zn(modulus(spec)?),
        }
    }

    pub fn name(&self) -> &str {
        &self.t.name
    }

    pub fn order(&self) -> usize {
        self.t.order
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.t.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.t.order).map(|e| e as Elem)
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.t.labels[e as usize]
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.t.add[a as usize * self.t.order + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.t.mul[a as usize * self.t.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.t.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one())
    }

    /// Exhaustive check of commutativity, associativity, identities and
    /// distributivity.
    pub fn check_axioms(&self) -> Result<()> {
        let els: Vec<Elem> = self.elements().collect();
        let fail = |msg: String| Err(Error::RingAxiom(format!("{}: {msg}", self.name())));
        for &a in &els {
            if self.add(a, 0) != a || self.add(0, a) != a {
                return fail(format!("0 is not an additive identity for {a}"));
            }
            if self.mul(a, self.one()) != a || self.mul(self.one(), a) != a {
                return fail(format!("{} is not a multiplicative identity for {a}", self.one()));
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) {
                    return fail(format!("addition not commutative at ({a},{b})"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail(format!("multiplication not commutative at ({a},{b})"));
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail(format!("addition not associative at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail(format!("multiplication not associative at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    fn full_mask(&self) -> u64 {
        if self.order() == 64 {
            u64::MAX
        } else {
            (1u64 << self.order()) - 1
        }
    }

    /// `|R|^n`, or `None` when it overflows `u64`.
    pub fn space_size(&self, n: usize) -> Option<u64> {
        (self.order() as u64).checked_pow(n as u32)
    }
}

/// An ideal of a [`FiniteRing`], stored as a membership bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ideal {
    mask: u64,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

impl Ideal {
    /// Validates that `members` is an ideal of `ring`.
    pub fn new(ring: &FiniteRing, members: &[Elem]) -> Result<Self> {
        let mut mask = 0u64;
        for &m in members {
            if m as usize >= ring.order() {
                return Err(Error::OutOfRange(format!("element {m} not in {ring}")));
            }
            mask |= 1 << m;
        }
        check_ideal_mask(ring, mask).map_err(Error::NotAnIdeal)?;
        Ok(Ideal { mask })
    }

    pub fn zero() -> Self {
        Ideal { mask: 1 }
    }

    pub fn whole(ring: &FiniteRing) -> Self {
        Ideal { mask: ring.full_mask() }
    }

    /// `a R`, which is an ideal because `R` is commutative with identity.
    pub fn principal(ring: &FiniteRing, a: Elem) -> Self {
        let mask = ring.elements().fold(0u64, |m, r| m | 1 << ring.mul(r, a));
        Ideal { mask }
    }

    pub fn sum(&self, other: &Ideal, ring: &FiniteRing) -> Ideal {
        let mut mask = 0u64;
        for a in self.members() {
            for b in other.members() {
                mask |= 1 << ring.add(a, b);
            }
        }
        Ideal { mask }
    }

    pub fn members(&self) -> Vec<Elem> {
        (0..64).filter(|&e| self.mask >> e & 1 == 1).map(|e| e as Elem).collect()
    }

    pub fn contains(&self, e: Elem) -> bool {
        (e as u32) < 64 && self.mask >> e & 1 == 1
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.mask == 1
    }

    pub fn is_whole(&self, ring: &FiniteRing) -> bool {
        self.mask == ring.full_mask()
    }

    pub fn labels(&self, ring: &FiniteRing) -> Vec<String> {
        self.members().iter().map(|&e| ring.label(e).to_string()).collect()
    }
}

fn check_ideal_mask(ring: &FiniteRing, mask: u64) -> std::result::Result<(), String> {
    let has = |e: Elem| mask >> e & 1 == 1;
    if !has(0) {
        return Err("does not contain zero".into());
    }
    let members: Vec<Elem> = ring.elements().filter(|&e| has(e)).collect();
    for &a in &members {
        for &b in &members {
            if !has(ring.add(a, b)) {
                return Err(format!("not closed under addition: {a} + {b}"));
            }
        }
        for r in ring.elements() {
            if !has(ring.mul(r, a)) {
                return Err(format!("not closed under multiplication: {r} * {a}"));
            }
        }
    }
    Ok(())
}

/// All ideals of `ring`, sorted by size and then by member list.
///
/// Every ideal of a finite ring is a finite sum of principal ideals, so the
/// principal ideals closed under pairwise sums give the whole lattice.
pub fn enumerate_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    if ring.order() > MAX_IDEAL_RING_ORDER {
        return Err(Error::Size(format!(
            "ideal enumeration limited to |R| <= {MAX_IDEAL_RING_ORDER}, got {}",
            ring.order()
        )));
    }
    let mut found: HashSet<Ideal> = ring.elements().map(|a| Ideal::principal(ring, a)).collect();
    let mut frontier: Vec<Ideal> = found.iter().copied().collect();
    let principals = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for i in &frontier {
            for p in &principals {
                let s = i.sum(p, ring);
                if found.insert(s) {
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    let mut ideals: Vec<Ideal> = found.into_iter().collect();
    ideals.sort_by_key(|i| (i.size(), i.members()));
    Ok(ideals)
}

/// `ann(I) = { r : r x = 0 for all x in I }`.
pub fn annihilator(ring: &FiniteRing, ideal: &Ideal) -> Result<Ideal> {
    if ideal.mask & !ring.full_mask() != 0 {
        return Err(Error::OutOfRange(format!("ideal has members outside {ring}")));
    }
    check_ideal_mask(ring, ideal.mask).map_err(Error::NotAnIdeal)?;
    let members = ideal.members();
    let mask = ring.elements().filter(|&r| members.iter().all(|&x| ring.mul(r, x) == 0)).fold(0u64, |m, r| m | 1 << r);
    Ok(Ideal { mask })
}

/// The first proper ideal with zero annihilator, if any. `None` means the
/// ring has property (+).
pub fn property_plus_violation(ring: &FiniteRing) -> Result<Option<Ideal>> {
    for ideal in enumerate_ideals(ring)? {
        if !ideal.is_whole(ring) && annihilator(ring, &ideal)?.is_zero() {
            return Ok(Some(ideal));
        }
    }
    Ok(None)
}

/// Every proper ideal has a non-zero annihilator.
pub fn has_property_plus(ring: &FiniteRing) -> Result<bool> {
    Ok(property_plus_violation(ring)?.is_none())
}

/// The first ideal violating `|ann(I)| * |I| = |R|`, together with its
/// annihilator. `None` means the dual-size hypothesis holds for `ring`.
pub fn annihilator_size_violation(ring: &FiniteRing) -> Result<Option<(Ideal, Ideal)>> {
    for ideal in enumerate_ideals(ring)? {
        let ann = annihilator(ring, &ideal)?;
        if ann.size() * ideal.size() != ring.order() {
            return Ok(Some((ideal, ann)));
        }
    }
    Ok(None)
}

fn matrix_shape(rows: &[Vec<Elem>], ring: &FiniteRing) -> Result<(usize, usize)> {
    let t = rows.first().map(Vec::len).ok_or_else(|| Error::Dimension("matrix has no rows".into()))?;
    if t == 0 {
        return Err(Error::Dimension("matrix has no columns".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != t {
            return Err(Error::Dimension(format!("row {i} has length {}, expected {t}", row.len())));
        }
        if let Some(&e) = row.iter().find(|&&e| e as usize >= ring.order()) {
            return Err(Error::OutOfRange(format!("entry {e} in row {i} not in {ring}")));
        }
    }
    Ok((rows.len(), t))
}

/// Advances `digits` as a base-`q` odometer (last digit fastest). Returns
/// `false` after wrapping around to all zeros.
fn odometer(digits: &mut [Elem], q: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if (*d as usize) + 1 < q {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

fn check_scan(ring: &FiniteRing, t: usize, what: &str) -> Result<()> {
    match ring.space_size(t) {
        Some(s) if (s as u128) <= MAX_SCAN => Ok(()),
        s => Err(Error::budget(format!("{what} over {ring}^{t}"), s.map_or(u128::MAX, u128::from), MAX_SCAN)),
    }
}

fn dot(ring: &FiniteRing, x: &[Elem], y: &[Elem]) -> Elem {
    x.iter().zip(y).fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
}

/// True iff no coefficient vector `c != 0` in `R^t` gives `A c = 0`.
pub fn columns_independent(ring: &FiniteRing, a: &[Vec<Elem>]) -> Result<bool> {
    let (_, t) = matrix_shape(a, ring)?;
    check_scan(ring, t, "independence scan")?;
    let mut c = vec![0 as Elem; t];
    while odometer(&mut c, ring.order()) {
        if a.iter().all(|row| dot(ring, row, &c) == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The submodule of `R^t` spanned by the rows of `a`.
pub fn row_space(ring: &FiniteRing, a: &[Vec<Elem>]) -> Result<RingCode> {
    let (_, t) = matrix_shape(a, ring)?;
    RingCode::from_generators(ring, t, a)
}

/// For a matrix with independent columns, whether its row space is all of
/// `R^t`. Dependent columns are a precondition error.
pub fn check_property_star(ring: &FiniteRing, a: &[Vec<Elem>]) -> Result<bool> {
    if !columns_independent(ring, a)? {
        return Err(Error::Precondition("matrix columns are linearly dependent".into()));
    }
    let space = row_space(ring, a)?;
    Ok(Some(space.size() as u64) == ring.space_size(space.length()))
}

/// A linear code over a finite ring: a submodule of `R^n`, with all of its
/// words enumerated.
///
/// Words are packed as base-`|R|` integers with the first coordinate most
/// significant, so the sorted word list is in lexicographic order.
#[derive(Clone, Debug)]
pub struct RingCode {
    ring: FiniteRing,
    n: usize,
    generators: Vec<Vec<Elem>>,
    words: Vec<u64>,
}

impl PartialEq for RingCode {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.n == other.n && self.words == other.words
    }
}

impl Eq for RingCode {}

impl RingCode {
    /// Enumerates the submodule spanned by `generators`. An empty generator
    /// list gives the zero code.
    pub fn from_generators(ring: &FiniteRing, n: usize, generators: &[Vec<Elem>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("code length must be positive".into()));
        }
        if ring.space_size(n).is_none() {
            return Err(Error::Size(format!("{ring}^{n} does not fit 64-bit word packing")));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::Dimension(format!("generator {i} has length {}, expected {n}", g.len())));
            }
            if let Some(&e) = g.iter().find(|&&e| e as usize >= ring.order()) {
                return Err(Error::OutOfRange(format!("generator {i} entry {e} not in {ring}")));
            }
        }
        let words = span(ring, n, generators)?;
        let code = RingCode { ring: ring.clone(), n, generators: generators.to_vec(), words };
        debug_assert!(generators.iter().all(|g| code.contains(g)));
        Ok(code)
    }

    pub fn zero_code(ring: &FiniteRing, n: usize) -> Result<Self> {
        Self::from_generators(ring, n, &[])
    }

    pub fn full(ring: &FiniteRing, n: usize) -> Result<Self> {
        let gens: Vec<Vec<Elem>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { 0 }).collect()).collect();
        Self::from_generators(ring, n, &gens)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<Elem>] {
        &self.generators
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Packed words in lexicographic order.
    pub fn packed_words(&self) -> &[u64] {
        &self.words
    }

    pub fn word(&self, i: usize) -> Vec<Elem> {
        unpack(self.words[i], self.n, self.ring.order())
    }

    pub fn words(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.words.iter().map(|&w| unpack(w, self.n, self.ring.order()))
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        word.len() == self.n
            && word.iter().all(|&e| (e as usize) < self.ring.order())
            && self.words.binary_search(&pack(word, self.ring.order())).is_ok()
    }

    /// All `x` in `R^n` orthogonal to the code, by a full scan of `R^n`.
    ///
    /// Orthogonality is tested against the generators; by bilinearity this
    /// is the same as testing every codeword.
    pub fn dual(&self) -> Result<RingCode> {
        check_scan(&self.ring, self.n, "dual scan")?;
        let q = self.ring.order();
        let mut x = vec![0 as Elem; self.n];
        let mut words = vec![0u64];
        while odometer(&mut x, q) {
            if self.generators.iter().all(|g| dot(&self.ring, &x, g) == 0) {
                words.push(pack(&x, q));
            }
        }
        let generators = reduce_generators(&self.ring, self.n, &words);
        let dual = RingCode { ring: self.ring.clone(), n: self.n, generators, words };
        debug_assert!(dual.is_submodule());
        Ok(dual)
    }

    /// Minimum Hamming weight of a non-zero word; `n + 1` for the zero code.
    pub fn min_hamming_weight(&self) -> usize {
        self.words().map(|w| w.iter().filter(|&&e| e != 0).count()).filter(|&w| w > 0).min().unwrap_or(self.n + 1)
    }

    /// Direct re-check that the word list is closed under addition and
    /// scalar multiplication.
    pub fn is_submodule(&self) -> bool {
        let words: Vec<Vec<Elem>> = self.words().collect();
        if !self.contains(&vec![0; self.n]) {
            return false;
        }
        for u in &words {
            for r in self.ring.elements() {
                let ru: Vec<Elem> = u.iter().map(|&e| self.ring.mul(r, e)).collect();
                if !self.contains(&ru) {
                    return false;
                }
            }
            for v in &words {
                let s: Vec<Elem> = u.iter().zip(v).map(|(&a, &b)| self.ring.add(a, b)).collect();
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Codewords as rows of an array over the alphabet of element ids.
    pub fn to_array(&self) -> Array {
        let rows: Vec<Vec<u8>> = self.words().collect();
        Array::new(self.ring.order(), self.n, rows).expect("codewords are valid array rows")
    }

    /// The code spanned by this one and `extra`.
    pub fn extend(&self, extra: &[Elem]) -> Result<RingCode> {
        let mut gens = self.generators.clone();
        gens.push(extra.to_vec());
        RingCode::from_generators(&self.ring, self.n, &gens)
    }
}

pub(crate) fn pack(word: &[Elem], q: usize) -> u64 {
    word.iter().fold(0u64, |acc, &e| acc * q as u64 + e as u64)
}

pub(crate) fn unpack(mut w: u64, n: usize, q: usize) -> Vec<Elem> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = (w % q as u64) as Elem;
        w /= q as u64;
    }
    out
}

/// Sorted packed words of the submodule spanned by `generators`.
fn span(ring: &FiniteRing, n: usize, generators: &[Vec<Elem>]) -> Result<Vec<u64>> {
    let q = ring.order();
    let mut current: Vec<Vec<Elem>> = vec![vec![0; n]];
    let mut seen: HashSet<u64> = HashSet::from([0]);
    for g in generators {
        let multiples: Vec<Vec<Elem>> = {
            let mut ms: Vec<Vec<Elem>> = ring.elements().map(|r| g.iter().map(|&e| ring.mul(r, e)).collect()).collect();
            ms.sort();
            ms.dedup();
            ms
        };
        let mut next = Vec::new();
        for s in &current {
            for m in &multiples {
                let w: Vec<Elem> = s.iter().zip(m).map(|(&a, &b)| ring.add(a, b)).collect();
                if seen.insert(pack(&w, q)) {
                    next.push(w);
                }
            }
        }
        if seen.len() as u128 > MAX_SCAN {
            return Err(Error::budget("code enumeration", seen.len() as u128, MAX_SCAN));
        }
        current.extend(next);
    }
    let mut words: Vec<u64> = seen.into_iter().collect();
    words.sort_unstable();
    Ok(words)
}

/// Greedy generating set for the submodule whose packed words are `words`
/// (sorted): walk the words in order and keep those not yet spanned.
fn reduce_generators(ring: &FiniteRing, n: usize, words: &[u64]) -> Vec<Vec<Elem>> {
    let q = ring.order();
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    let mut spanned: Vec<u64> = vec![0];
    for &w in words {
        if spanned.binary_search(&w).is_ok() {
            continue;
        }
        gens.push(unpack(w, n, q));
        spanned = span(ring, n, &gens).expect("sub-span of an enumerated code");
        if spanned.len() == words.len() {
            break;
        }
    }
    gens
}

/// All submodules of `R^n` reachable with at most `max_generators`
/// generators (`None` for no limit), deduplicated, in discovery order.
pub fn enumerate_codes(ring: &FiniteRing, n: usize, max_generators: Option<usize>) -> Result<Vec<RingCode>> {
    check_scan(ring, n, "code enumeration")?;
    let q = ring.order();
    let all_words: Vec<Vec<Elem>> = (0..ring.space_size(n).unwrap()).map(|w| unpack(w, n, q)).collect();
    let zero = RingCode::zero_code(ring, n)?;
    let mut seen: HashSet<Vec<u64>> = HashSet::from([zero.words.clone()]);
    let mut out = vec![zero.clone()];
    let mut level = vec![zero];
    let mut depth = 0;
    while !level.is_empty() && max_generators.is_none_or(|m| depth < m) {
        let mut next = Vec::new();
        for code in &level {
            for w in &all_words[1..] {
                if code.contains(w) {
                    continue;
                }
                let bigger = code.extend(w)?;
                if seen.insert(bigger.words.clone()) {
                    next.push(bigger.clone());
                    out.push(bigger);
                }
            }
        }
        level = next;
        depth += 1;
    }
    Ok(out)
}
