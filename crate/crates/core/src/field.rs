//! Exact arithmetic in finite fields `F_q` with `q = p^m <= 2^16`.
//!
//! Elements are stored as canonical integer encodings in `[0, q)`: the value
//! written in base `p` gives the coefficients of the residue polynomial, with
//! digit `i` of the value being the coefficient of `x^i`. For prime fields
//! (`m = 1`) this is the usual residue `0..p`. The encoding means every
//! element of the prime subfield has the *same* integer value in `F_p` and in
//! any extension `F_{p^m}`, which the matrix constructions rely on when they
//! embed prime-field matrices into an extension.
//!
//! Unless an explicit modulus is supplied, extensions are built over the
//! lexicographically smallest monic irreducible of degree `m` (smallest when
//! the non-leading coefficients are read as a base-`p` integer). This keeps
//! element encodings stable across runs and machines:
//!
//! * `F_4`: `x^2 + x + 1`
//! * `F_8`: `x^3 + x + 1`
//! * `F_9`: `x^2 + 1`
//!
//! For `q <= 256` full multiplication and inverse tables are precomputed at
//! construction, so the hot paths in the rank solvers are table lookups.

use std::fmt;

/// Largest permitted field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Orders up to this get precomputed multiplication/inverse tables.
const TABLE_LIMIT: u64 = 256;

/// Canonical integer encoding of a field element, in `[0, q)`.
pub type FieldElement = u32;

// ============================================================================
// Errors
// ============================================================================

/// Failure to construct or parse a field description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The characteristic given is not a prime number.
    NotPrime(u64),
    /// An explicit modulus was rejected: wrong degree, not monic, or it
    /// factors over `F_p`.
    ReducibleModulus(String),
    /// `p^m` exceeds [`MAX_ORDER`] (or a parameter was zero).
    TooLarge { p: u64, m: u32 },
    /// A field name such as `"9"` or `"3^2"` could not be understood.
    BadName(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::ReducibleModulus(why) => write!(f, "bad modulus: {why}"),
            FieldError::TooLarge { p, m } => {
                write!(f, "field order {p}^{m} out of range (need 2..={MAX_ORDER})")
            }
            FieldError::BadName(s) => write!(f, "cannot parse field name: {s}"),
        }
    }
}

impl std::error::Error for FieldError {}

// ============================================================================
// Field
// ============================================================================

/// A concrete finite field `F_{p^m}`.
///
/// All arithmetic goes through methods on this struct; elements themselves
/// are plain [`FieldElement`] encodings and carry no field reference.
#[derive(Clone)]
pub struct Field {
    p: u64,
    m: u32,
    q: u64,
    /// Modulus coefficients, index `i` = coefficient of `x^i`; length `m + 1`,
    /// monic. For `m = 1` this is the polynomial `x`.
    modulus: Vec<u32>,
    /// Row-major `q x q` product table when `q <= 256`, else empty.
    mul_table: Vec<u32>,
    /// `inv_table[a]` for `a in 1..q` when `q <= 256`, else empty
    /// (`inv_table[0]` is a dummy 0).
    inv_table: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.m)
        }
    }
}

impl Field {
    /// Builds `F_{p^m}`, with an optional explicit modulus (coefficient list,
    /// index `i` = coefficient of `x^i`, monic of degree `m`).
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u32>>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::TooLarge { p, m });
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q.checked_mul(p).filter(|&v| v <= MAX_ORDER).ok_or(FieldError::TooLarge { p, m })?;
        }
        let modulus = match modulus {
            Some(coeffs) => {
                validate_modulus(p, m, &coeffs)?;
                coeffs
            }
            None => default_modulus(p, m),
        };
        let mut field = Field { p, m, q, modulus, mul_table: Vec::new(), inv_table: Vec::new() };
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    /// `F_{p^m}` with the default (lexicographically smallest) modulus.
    pub fn extension(p: u64, m: u32) -> Result<Field, FieldError> {
        Field::new(p, m, None)
    }

    /// Parses `"q"` (a prime power) or `"p^m"`.
    ///
    /// ```
    /// # use mrff::field::Field;
    /// assert_eq!(Field::parse("9").unwrap(), Field::extension(3, 2).unwrap());
    /// assert_eq!(Field::parse("2^3").unwrap(), Field::parse("8").unwrap());
    /// ```
    pub fn parse(name: &str) -> Result<Field, FieldError> {
        let bad = || FieldError::BadName(name.to_string());
        if let Some((base, exp)) = name.split_once('^') {
            let p: u64 = base.trim().parse().map_err(|_| bad())?;
            let m: u32 = exp.trim().parse().map_err(|_| bad())?;
            return Field::new(p, m, None);
        }
        let q: u64 = name.trim().parse().map_err(|_| bad())?;
        if q < 2 {
            return Err(bad());
        }
        // Prime powers factor uniquely, so (p, m) is determined by q.
        let mut p = q;
        for d in 2..=q {
            if d * d > q {
                break;
            }
            if q % d == 0 {
                p = d;
                break;
            }
        }
        let mut m = 0;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(FieldError::BadName(format!("{name}: not a prime power")));
        }
        Field::new(p, m, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The order `q = p^m`.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients (index `i` = coefficient of `x^i`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    pub fn char_two(&self) -> bool {
        self.p == 2
    }

    /// True for elements of the prime subfield `F_p` (encodings `0..p`).
    pub fn in_prime_subfield(&self, a: FieldElement) -> bool {
        u64::from(a) < self.p
    }

    /// All element encodings, in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.q as FieldElement
    }

    pub fn zero(&self) -> FieldElement {
        0
    }

    pub fn one(&self) -> FieldElement {
        1
    }

    // ------------------------------------------------------------------
    // Arithmetic
    // ------------------------------------------------------------------

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.debug_check(a);
        self.debug_check(b);
        if self.m == 1 {
            let s = u64::from(a) + u64::from(b);
            (if s >= self.q { s - self.q } else { s }) as FieldElement
        } else if self.p == 2 {
            // Base-2 digits add without carry: XOR.
            a ^ b
        } else {
            self.digitwise(a, b, |x, y, p| (x + y) % p)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.debug_check(a);
        if self.m == 1 {
            if a == 0 {
                0
            } else {
                (self.q - u64::from(a)) as FieldElement
            }
        } else if self.p == 2 {
            a
        } else {
            self.digitwise(a, 0, |x, _, p| (p - x) % p)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.debug_check(a);
        self.debug_check(b);
        if !self.mul_table.is_empty() {
            return self.mul_table[(u64::from(a) * self.q + u64::from(b)) as usize];
        }
        self.mul_slow(a, b)
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn checked_inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a == 0 {
            return None;
        }
        if !self.inv_table.is_empty() {
            return Some(self.inv_table[a as usize]);
        }
        // a^(q-2) = a^(-1) in a field of order q.
        Some(self.pow(a, self.q - 2))
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics on zero, like integer division.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        self.checked_inv(a).expect("inverse of zero field element")
    }

    /// `a / b`. Panics if `b` is zero.
    #[inline]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc: FieldElement = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_dispatch(acc, base);
            }
            base = self.mul_dispatch(base, base);
            e >>= 1;
        }
        acc
    }

    /// Sum of an iterator of elements.
    pub fn sum(&self, it: impl IntoIterator<Item = FieldElement>) -> FieldElement {
        it.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// The element encoded by an integer reduced into the prime subfield.
    /// Handy for writing small constants: `f.embed(-1)` is `p - 1`.
    pub fn embed(&self, value: i64) -> FieldElement {
        let p = self.p as i64;
        (value.rem_euclid(p)) as FieldElement
    }

    // ------------------------------------------------------------------
    // Squares
    // ------------------------------------------------------------------

    /// Whether `a` is a square in the field. In characteristic 2 every
    /// element is a square (Frobenius is onto).
    pub fn is_square(&self, a: FieldElement) -> bool {
        if a == 0 || self.p == 2 {
            return true;
        }
        // Nonzero a is a square iff a^((q-1)/2) = 1.
        self.pow(a, (self.q - 1) / 2) == 1
    }

    /// Some square root of `a`, if one exists. Deterministic: returns the
    /// smallest encoding. Cost is a scan of the field (fine for q <= 2^16).
    pub fn sqrt(&self, a: FieldElement) -> Option<FieldElement> {
        if self.p == 2 {
            // Frobenius x -> x^2 is a bijection; invert it by exponentiation.
            return Some(self.pow(a, self.q / 2));
        }
        self.elements().find(|&s| self.mul_dispatch(s, s) == a)
    }

    /// Smallest non-square encoding, or `None` in characteristic 2 where
    /// every element is a square.
    pub fn smallest_nonsquare(&self) -> Option<FieldElement> {
        if self.p == 2 {
            return None;
        }
        self.elements().find(|&a| !self.is_square(a))
    }

    // ------------------------------------------------------------------
    // Internals
    // ------------------------------------------------------------------

    #[inline]
    fn debug_check(&self, a: FieldElement) {
        debug_assert!(u64::from(a) < self.q, "element {a} out of range for {self}");
    }

    #[inline]
    fn mul_dispatch(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if !self.mul_table.is_empty() {
            self.mul_table[(u64::from(a) * self.q + u64::from(b)) as usize]
        } else {
            self.mul_slow(a, b)
        }
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return ((u64::from(a) * u64::from(b)) % self.q) as FieldElement;
        }
        let pa = self.decode(a);
        let pb = self.decode(b);
        let prod = poly_mul_mod(self.p, &pa, &pb, &self.modulus);
        self.encode(&prod)
    }

    fn digitwise(&self, a: FieldElement, b: FieldElement, op: fn(u64, u64, u64) -> u64) -> FieldElement {
        let p = self.p;
        let (mut ra, mut rb) = (u64::from(a), u64::from(b));
        let mut out: u64 = 0;
        let mut scale: u64 = 1;
        for _ in 0..self.m {
            out += op(ra % p, rb % p, p) * scale;
            ra /= p;
            rb /= p;
            scale *= p;
        }
        out as FieldElement
    }

    /// Base-p digits of `a`, least significant (constant coefficient) first.
    fn decode(&self, a: FieldElement) -> Vec<u32> {
        let mut v = u64::from(a);
        let mut out = vec![0u32; self.m as usize];
        for c in out.iter_mut() {
            *c = (v % self.p) as u32;
            v /= self.p;
        }
        out
    }

    fn encode(&self, coeffs: &[u32]) -> FieldElement {
        let mut out: u64 = 0;
        for &c in coeffs.iter().rev() {
            out = out * self.p + u64::from(c);
        }
        out as FieldElement
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut table = vec![0u32; q * q];
        for a in 0..q as u32 {
            for b in a..q as u32 {
                let v = self.mul_slow(a, b);
                table[a as usize * q + b as usize] = v;
                table[b as usize * q + a as usize] = v;
            }
        }
        let mut inv = vec![0u32; q];
        for a in 1..q as u32 {
            if inv[a as usize] != 0 {
                continue;
            }
            let b = (1..q as u32)
                .find(|&b| table[a as usize * q + b as usize] == 1)
                .expect("every nonzero element has an inverse");
            inv[a as usize] = b;
            inv[b as usize] = a;
        }
        self.mul_table = table;
        self.inv_table = inv;
    }
}

// ============================================================================
// Polynomial helpers over F_p (dense coefficient vectors, index = degree)
// ============================================================================

fn poly_degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// `a * b mod (modulus)` over `F_p`. Result has length `deg(modulus)`.
fn poly_mul_mod(p: u64, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u64::from(ca) * u64::from(cb)) % p;
        }
    }
    // Reduce: modulus is monic, so x^m = -(lower terms).
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (k, &mc) in modulus.iter().take(m).enumerate() {
            let sub = (c * u64::from(mc)) % p;
            prod[d - m + k] = (prod[d - m + k] + p - sub) % p;
        }
    }
    prod.truncate(m);
    prod.iter().map(|&c| c as u32).collect()
}

/// Remainder of `a` divided by monic `g` over `F_p`.
fn poly_rem(p: u64, a: &[u32], g: &[u32]) -> Vec<u32> {
    let dg = poly_degree(g).expect("divisor must be nonzero");
    let mut r: Vec<u64> = a.iter().map(|&c| u64::from(c)).collect();
    while let Some(dr) = r.iter().rposition(|&c| c != 0) {
        if dr < dg {
            break;
        }
        let lead = r[dr];
        for (k, &gc) in g.iter().take(dg).enumerate() {
            let sub = (lead * u64::from(gc)) % p;
            r[dr - dg + k] = (r[dr - dg + k] + p - sub) % p;
        }
        r[dr] = 0;
    }
    r.iter().map(|&c| c as u32).collect()
}

fn poly_is_zero(f: &[u32]) -> bool {
    f.iter().all(|&c| c == 0)
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree `1..=deg/2`. The field-order cap keeps this cheap: there are at most
/// `sqrt(p^m) <= 256` candidates per degree.
fn poly_irreducible(p: u64, f: &[u32]) -> bool {
    let deg = match poly_degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for t in 0..count {
            // Monic candidate of degree d with lower coefficients = digits of t.
            let mut g = vec![0u32; d + 1];
            let mut v = t;
            for c in g.iter_mut().take(d) {
                *c = (v % p) as u32;
                v /= p;
            }
            g[d] = 1;
            if poly_is_zero(&poly_rem(p, f, &g)) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u64, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1]; // the polynomial x
    }
    let count = p.pow(m); // q <= MAX_ORDER, no overflow
    for t in 0..count {
        let mut f = vec![0u32; m as usize + 1];
        let mut v = t;
        for c in f.iter_mut().take(m as usize) {
            *c = (v % p) as u32;
            v /= p;
        }
        f[m as usize] = 1;
        if poly_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of each degree exists over every F_p")
}

fn validate_modulus(p: u64, m: u32, coeffs: &[u32]) -> Result<(), FieldError> {
    if coeffs.len() != m as usize + 1 {
        return Err(FieldError::ReducibleModulus(format!(
            "expected {} coefficients, got {}",
            m + 1,
            coeffs.len()
        )));
    }
    if coeffs.iter().any(|&c| u64::from(c) >= p) {
        return Err(FieldError::ReducibleModulus(format!("coefficients must lie in 0..{p}")));
    }
    if coeffs[m as usize] != 1 {
        return Err(FieldError::ReducibleModulus("modulus must be monic".into()));
    }
    if m > 1 && !poly_irreducible(p, coeffs) {
        return Err(FieldError::ReducibleModulus(format!("polynomial factors over F_{p}")));
    }
    Ok(())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn all_small_fields() -> Vec<Field> {
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
            .iter()
            .map(|&(p, m)| Field::new(p, m, None).unwrap())
            .collect()
    }

    #[test]
    fn construction_basics() {
        let f4 = Field::extension(2, 2).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(f4.modulus(), &[1, 1, 1]); // x^2 + x + 1

        let f8 = Field::extension(2, 3).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]); // x^3 + x + 1

        let f9 = Field::extension(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]); // x^2 + 1

        assert_eq!(Field::prime(2).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Field::new(4, 1, None), Err(FieldError::NotPrime(4)));
        assert_eq!(Field::new(6, 2, None), Err(FieldError::NotPrime(6)));
        assert!(matches!(Field::new(2, 17, None), Err(FieldError::TooLarge { .. })));
        assert!(matches!(Field::new(257, 2, None), Err(FieldError::TooLarge { .. })));
        // x^2 + 1 = (x+1)^2 over F_2.
        assert!(matches!(Field::new(2, 2, Some(vec![1, 0, 1])), Err(FieldError::ReducibleModulus(_))));
        // Not monic.
        assert!(matches!(Field::new(3, 2, Some(vec![1, 0, 2])), Err(FieldError::ReducibleModulus(_))));
    }

    #[test]
    fn parse_names() {
        assert_eq!(Field::parse("2").unwrap().order(), 2);
        assert_eq!(Field::parse("4").unwrap(), Field::extension(2, 2).unwrap());
        assert_eq!(Field::parse("3^2").unwrap(), Field::extension(3, 2).unwrap());
        assert_eq!(Field::parse("1009").unwrap().order(), 1009);
        assert!(Field::parse("12").is_err()); // not a prime power
        assert!(Field::parse("1").is_err());
        assert!(Field::parse("x").is_err());
    }

    #[test]
    fn f4_arithmetic_known_values() {
        // Encodings over x^2 + x + 1: 2 = x, 3 = x + 1.
        let f4 = Field::parse("4").unwrap();
        assert_eq!(f4.mul(2, 2), 3); // x^2 = x + 1
        assert_eq!(f4.mul(2, 3), 1); // x(x+1) = x^2 + x = 1
        assert_eq!(f4.inv(2), 3);
        assert_eq!(f4.add(2, 3), 1);
        assert_eq!(f4.neg(3), 3);
    }

    #[test]
    fn f9_arithmetic_known_values() {
        // Encodings over x^2 + 1: 3 = x, 4 = x + 1.
        let f9 = Field::parse("9").unwrap();
        assert_eq!(f9.mul(3, 3), 2); // x^2 = -1 = 2
        assert_eq!(f9.mul(4, 4), 6); // (x+1)^2 = x^2 + 2x + 1 = 2x
        assert_eq!(f9.add(4, 8), 0); // (x+1) + (2x+2) = 3x + 3 = 0 (coeffs mod 3)
        assert_eq!(f9.add(4, 5), 6); // (x+1) + (x+2) = 2x
    }

    /// Every field axiom, checked exhaustively on all orders q <= 9.
    #[test]
    fn field_axioms_exhaustive() {
        for f in all_small_fields() {
            let els: Vec<u32> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "inv failed for {a} in {f}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity failed in {f}"
                        );
                    }
                }
            }
            // No zero divisors.
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.mul(a, b) == 0, a == 0 || b == 0);
                }
            }
        }
    }

    #[test]
    fn large_prime_field_without_tables() {
        let f = Field::prime(1009).unwrap();
        assert_eq!(f.mul(1000, 1000), (1000u64 * 1000 % 1009) as u32);
        for a in [1u32, 2, 17, 500, 1008] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.embed(-1), 1008);
    }

    #[test]
    fn frobenius_is_a_bijection_in_char_two() {
        for q in [2u64, 4, 8] {
            let f = Field::parse(&q.to_string()).unwrap();
            let mut seen = vec![false; q as usize];
            for a in f.elements() {
                let sq = f.mul(a, a);
                assert!(!seen[sq as usize], "x^2 not injective in {f}");
                seen[sq as usize] = true;
            }
            // Everything is a square, so sqrt always exists.
            for a in f.elements() {
                let s = f.sqrt(a).unwrap();
                assert_eq!(f.mul(s, s), a);
            }
        }
    }

    #[test]
    fn squares_and_nonsquares() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.smallest_nonsquare(), Some(2));

        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.smallest_nonsquare(), Some(2)); // squares mod 5: {0,1,4}

        let f9 = Field::parse("9").unwrap();
        // Squares in F_9: x^2 for x in 0..9 -> {0, 1, 2, 3, 6}.
        let squares: Vec<u32> = f9.elements().filter(|&a| f9.is_square(a)).collect();
        assert_eq!(squares, vec![0, 1, 2, 3, 6]);
        assert_eq!(f9.smallest_nonsquare(), Some(4));

        assert_eq!(Field::parse("4").unwrap().smallest_nonsquare(), None);
    }

    /// Facts about F_3 that make it special for low-rank patterns: x^2 = 1
    /// for nonzero x, so 1 + xy = 0 iff x != y (both nonzero).
    #[test]
    fn f3_identities() {
        let f3 = Field::prime(3).unwrap();
        for x in 1..3u32 {
            assert_eq!(f3.mul(x, x), 1);
            for y in 1..3u32 {
                let v = f3.add(1, f3.mul(x, y));
                assert_eq!(v == 0, x != y);
            }
        }
    }

    #[test]
    fn prime_subfield_encodings_are_stable() {
        // The same integer encodes the same prime-subfield element in F_3 and F_9.
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::parse("9").unwrap();
        for a in 0..3u32 {
            for b in 0..3u32 {
                assert_eq!(f3.add(a, b), f9.add(a, b));
                assert_eq!(f3.mul(a, b), f9.mul(a, b));
            }
        }
        assert!(f9.in_prime_subfield(2));
        assert!(!f9.in_prime_subfield(3));
        // First element outside the prime subfield is the generator x.
        let beta = f9.elements().find(|&a| !f9.in_prime_subfield(a)).unwrap();
        assert_eq!(beta, 3);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        for f in all_small_fields() {
            for a in f.elements() {
                let mut acc = 1u32;
                for e in 0..6u64 {
                    assert_eq!(f.pow(a, e), acc);
                    acc = f.mul(acc, a);
                }
            }
        }
    }
}
