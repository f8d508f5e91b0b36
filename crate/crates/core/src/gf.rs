//! Arithmetic tables for small finite fields `F_q` with `q = p^e <= 2^16`,
//! and dense row-major matrices over them.
//!
//! Elements are integer codes `0..q-1`. For prime fields the code is the
//! residue itself. For extension fields an element `c_0 + c_1*x + ... +
//! c_{e-1}*x^{e-1}` is encoded as the base-`p` integer `sum c_i * p^i`, so
//! the code of the polynomial generator `x` is `p`. Multiplication of
//! nonzero elements goes through discrete-log tables for a generator of
//! the multiplicative group; addition is digit-wise mod `p` (with a full
//! lookup table for small extension fields).
//!
//! The reducing polynomial for `(p, e)` is fixed deterministically: the
//! first monic degree-`e` polynomial, in ascending order of the base-`p`
//! encoding of its non-leading coefficients, that is irreducible and has
//! `x` as a primitive root. This makes element codes reproducible across
//! runs and platforms (F_4: x^2+x+1, F_8: x^3+x+1, F_9: x^2+x+2).

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Extension fields up to this order get a full q*q addition table.
const ADD_TABLE_LIMIT: u64 = 512;

/// Shared handle to a field's arithmetic tables.
pub type Field = Arc<FieldTable>;

/// Arithmetic tables for `F_q`, immutable after construction.
pub struct FieldTable {
    p: u64,
    e: u32,
    q: u64,
    /// Coefficients `c_0..c_e` of the reducing polynomial (monic, so the
    /// last entry is 1). For prime fields this is empty.
    modulus: Vec<u32>,
    generator: u32,
    /// `log[code]` for nonzero codes; `log[0]` is unused.
    log: Vec<u32>,
    /// `exp[i] = generator^i`, doubled in length so sums of two logs
    /// index directly.
    exp: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldTable {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}

impl Eq for FieldTable {}

fn is_prime_small(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomial helpers over F_p used only while building tables.
mod poly {
    pub(super) fn trim(v: &mut Vec<u32>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    pub(super) fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u64) -> Vec<u32> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
            }
        }
        let mut prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&mut prod, f, p);
        prod
    }

    // In-place remainder of `a` by the monic polynomial `f`.
    pub(super) fn rem(a: &mut Vec<u32>, f: &[u32], p: u64) {
        let df = f.len() - 1;
        while a.len() > df {
            let lead = *a.last().unwrap() as u64;
            let shift = a.len() - 1 - df;
            if lead != 0 {
                for (i, &fi) in f.iter().enumerate() {
                    let idx = shift + i;
                    let sub = (lead * fi as u64) % p;
                    let cur = a[idx] as u64;
                    a[idx] = ((cur + p - sub) % p) as u32;
                }
            }
            a.pop();
        }
        trim(a);
    }

    pub(super) fn powmod(base: &[u32], mut exp: u64, f: &[u32], p: u64) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = base.to_vec();
        rem(&mut b, f, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            exp >>= 1;
        }
        acc
    }

    pub(super) fn gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u64) -> Vec<u32> {
        trim(&mut a);
        trim(&mut b);
        while !(b.len() == 1 && b[0] == 0) {
            // Make b monic before reducing.
            let lead = *b.last().unwrap();
            if lead != 1 {
                let inv = super::mod_inverse(lead as u64, p);
                for c in b.iter_mut() {
                    *c = ((*c as u64 * inv) % p) as u32;
                }
            }
            rem(&mut a, &b, p);
            std::mem::swap(&mut a, &mut b);
        }
        a
    }

    pub(super) fn is_one(v: &[u32]) -> bool {
        v.len() == 1 && v[0] == 1
    }

    pub(super) fn is_x(v: &[u32]) -> bool {
        v.len() == 2 && v[0] == 0 && v[1] == 1
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, so Fermat works.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn is_irreducible(f: &[u32], p: u64, e: u32) -> bool {
    // x^(p^e) == x mod f, and gcd(x^(p^(e/r)) - x, f) == 1 for prime r | e.
    let x = vec![0u32, 1];
    let mut frob = x.clone();
    let mut powers = Vec::with_capacity(e as usize);
    for _ in 0..e {
        frob = poly::powmod(&frob, p, f, p);
        powers.push(frob.clone());
    }
    if !poly::is_x(&powers[e as usize - 1]) {
        return false;
    }
    for (r, _) in factor::factorize(e as u128) {
        let d = (e / r as u32) as usize;
        // x^(p^d) - x
        let mut diff = powers[d - 1].clone();
        while diff.len() < 2 {
            diff.push(0);
        }
        diff[1] = ((diff[1] as u64 + p - 1) % p) as u32;
        poly::trim(&mut diff);
        let g = poly::gcd(f.to_vec(), diff, p);
        if !poly::is_one(&g) {
            return false;
        }
    }
    true
}

fn x_is_primitive(f: &[u32], p: u64, q: u64) -> bool {
    let x = vec![0u32, 1];
    for (r, _) in factor::factorize((q - 1) as u128) {
        let pw = poly::powmod(&x, (q - 1) / r as u64, f, p);
        if poly::is_one(&pw) {
            return false;
        }
    }
    true
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let radicals: Vec<u64> = factor::factorize((p - 1) as u128)
        .into_iter()
        .map(|(r, _)| r as u64)
        .collect();
    'cand: for g in 2..p {
        for &r in &radicals {
            let mut acc = 1u64;
            let mut base = g;
            let mut exp = (p - 1) / r;
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                exp >>= 1;
            }
            if acc == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

impl FieldTable {
    /// Build the tables for `F_{p^e}`.
    pub fn new(p: u64, e: u32) -> Result<Field> {
        if !is_prime_small(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 {
            return Err(Error::BadParameters("extension degree must be >= 1".into()));
        }
        let q = (p as u128).checked_pow(e).ok_or(Error::Overflow)?;
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge {
                q,
                bound: MAX_FIELD_ORDER as u128,
            });
        }
        let q = q as u64;
        let table = if e == 1 {
            Self::build_prime(p)
        } else {
            Self::build_extension(p, e, q)
        };
        Ok(Arc::new(table))
    }

    /// Build `F_q` from the order alone; `q` must be a prime power.
    pub fn from_order(q: u64) -> Result<Field> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let factors = factor::factorize(q as u128);
        if factors.len() != 1 {
            return Err(Error::NotPrimePower(q));
        }
        let (p, e) = factors[0];
        FieldTable::new(p as u64, e)
    }

    fn build_prime(p: u64) -> FieldTable {
        let q = p;
        let g = smallest_primitive_root(p);
        let mut log = vec![0u32; q as usize];
        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut acc = 1u64;
        for i in 0..(q - 1) as usize {
            exp[i] = acc as u32;
            exp[i + (q - 1) as usize] = acc as u32;
            log[acc as usize] = i as u32;
            acc = acc * g % p;
        }
        FieldTable {
            p,
            e: 1,
            q,
            modulus: Vec::new(),
            generator: g as u32,
            log,
            exp,
            add_table: None,
        }
    }

    fn build_extension(p: u64, e: u32, q: u64) -> FieldTable {
        // Scan for the reducing polynomial in the documented order.
        let mut modulus: Option<Vec<u32>> = None;
        for m in 0..q {
            let mut f = Vec::with_capacity(e as usize + 1);
            let mut rest = m;
            for _ in 0..e {
                f.push((rest % p) as u32);
                rest /= p;
            }
            f.push(1); // monic
            if is_irreducible(&f, p, e) && x_is_primitive(&f, p, q) {
                modulus = Some(f);
                break;
            }
        }
        let modulus = modulus.expect("a primitive polynomial exists for every (p, e)");

        let encode = |poly: &[u32]| -> u32 {
            let mut code = 0u64;
            for &c in poly.iter().rev() {
                code = code * p + c as u64;
            }
            code as u32
        };

        let mut log = vec![0u32; q as usize];
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut acc = vec![1u32];
        for i in 0..(q - 1) as usize {
            let code = encode(&acc);
            exp[i] = code;
            exp[i + (q - 1) as usize] = code;
            log[code as usize] = i as u32;
            // Multiply by x and reduce.
            acc.insert(0, 0);
            poly::rem(&mut acc, &modulus, p);
        }

        let mut table = FieldTable {
            p,
            e,
            q,
            modulus,
            generator: p as u32,
            log,
            exp,
            add_table: None,
        };
        if q <= ADD_TABLE_LIMIT {
            let mut add = vec![0u32; (q * q) as usize];
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    add[(a as u64 * q + b as u64) as usize] = table.add_digitwise(a, b);
                }
            }
            table.add_table = Some(add);
        }
        table
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Code of the stored multiplicative generator.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// Coefficients `c_0..c_e` of the reducing polynomial (empty for
    /// prime fields).
    pub fn modulus_coeffs(&self) -> &[u32] {
        &self.modulus
    }

    pub fn check(&self, code: u32) -> Result<()> {
        if (code as u64) < self.q {
            Ok(())
        } else {
            Err(Error::InvalidElement { code, q: self.q })
        }
    }

    fn add_digitwise(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let mut a = a as u64;
        let mut b = b as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!((a as u64) < self.q && (b as u64) < self.q);
        if self.e == 1 {
            ((a as u64 + b as u64) % self.p) as u32
        } else if self.p == 2 {
            a ^ b
        } else if let Some(table) = &self.add_table {
            table[(a as u64 * self.q + b as u64) as usize]
        } else {
            self.add_digitwise(a, b)
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        debug_assert!((a as u64) < self.q);
        if self.p == 2 {
            return a;
        }
        if self.e == 1 {
            return if a == 0 { 0 } else { (self.p - a as u64) as u32 };
        }
        let p = self.p;
        let mut v = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while v > 0 {
            let d = v % p;
            out += if d == 0 { 0 } else { p - d } * place;
            v /= p;
            place *= p;
        }
        out as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!((a as u64) < self.q && (b as u64) < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        let la = self.log[a as usize] as usize;
        let lb = self.log[b as usize] as usize;
        self.exp[la + lb]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if a == 1 {
            return Ok(1);
        }
        let order = (self.q - 1) as usize;
        Ok(self.exp[order - self.log[a as usize] as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[(l * (k % order) % order) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Result<u64> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let group = self.q - 1;
        if group == 0 {
            return Ok(1);
        }
        let l = self.log[a as usize] as u64;
        Ok(group / factor::gcd_u128(group as u128, l as u128) as u64)
    }
}

/// Outcome of reduced row echelon elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: MatF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Dense row-major matrix over `F_q`.
#[derive(Clone)]
pub struct MatF {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl PartialEq for MatF {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl Eq for MatF {}

impl Hash for MatF {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.rows.hash(state);
        self.cols.hash(state);
        self.entries.hash(state);
    }
}

impl fmt::Debug for MatF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatF[{}x{} over F_{}: {}]", self.rows, self.cols, self.field.q(), self)
    }
}

impl fmt::Display for MatF {
    /// Text form: rows separated by `;`, entries by `,` — e.g. `1,0;0,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(";")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

impl MatF {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> MatF {
        MatF {
            field: field.clone(),
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> MatF {
        let mut m = MatF::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<MatF> {
        if rows.is_empty() {
            return Err(Error::DimensionMismatch("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        if cols == 0 {
            return Err(Error::DimensionMismatch("matrix needs at least one column".into()));
        }
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &v in row {
                field.check(v)?;
                entries.push(v);
            }
        }
        Ok(MatF {
            field: field.clone(),
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| self.get(r, c) == if r == c { 1 } else { 0 })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    fn same_field(&self, other: &MatF) -> Result<()> {
        if self.field.q() != other.field.q() {
            return Err(Error::FieldMismatch(self.field.q(), other.field.q()));
        }
        Ok(())
    }

    pub fn multiply(&self, rhs: &MatF) -> Result<MatF> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = MatF::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if b == 0 {
                        continue;
                    }
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, b)));
                }
            }
        }
        Ok(out)
    }

    /// Row-vector action `v * M`.
    pub fn apply_row(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..self.cols {
                let m = self.get(i, j);
                if m != 0 {
                    out[j] = f.add(out[j], f.mul(vi, m));
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        let f = self.field.clone();
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, f.mul(v, s));
        }
    }

    /// row[dst] += s * row[src]
    fn add_scaled_row(&mut self, dst: usize, src: usize, s: u32) {
        let f = self.field.clone();
        for c in 0..self.cols {
            let v = f.add(self.get(dst, c), f.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    /// Reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = m.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let s = f.neg(m.get(i, c));
                    m.add_scaled_row(i, r, s);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            mat: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<MatF> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = MatF::zero(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let red = aug.rref();
        if red.rank < n || red.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = MatF::zero(f, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, red.mat.get(r, n + c));
            }
        }
        Ok(out)
    }

    pub fn determinant(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let n = m.rows;
        let mut det: u32 = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for i in c + 1..n {
                if m.get(i, c) != 0 {
                    let s = f.neg(f.mul(m.get(i, c), inv));
                    m.add_scaled_row(i, c, s);
                }
            }
        }
        Ok(det)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &MatF) -> Result<MatF> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("stacking needs equal column counts".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(MatF {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Assemble a square matrix from four equally-sized blocks.
    pub fn from_blocks(a: &MatF, b: &MatF, c: &MatF, d: &MatF) -> Result<MatF> {
        a.same_field(b)?;
        a.same_field(c)?;
        a.same_field(d)?;
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("inconsistent block shapes".into()));
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut out = MatF::zero(&a.field, rows, cols);
        for r in 0..a.rows {
            for cc in 0..a.cols {
                out.set(r, cc, a.get(r, cc));
            }
            for cc in 0..b.cols {
                out.set(r, a.cols + cc, b.get(r, cc));
            }
        }
        for r in 0..c.rows {
            for cc in 0..c.cols {
                out.set(a.rows + r, cc, c.get(r, cc));
            }
            for cc in 0..d.cols {
                out.set(a.rows + r, a.cols + cc, d.get(r, cc));
            }
        }
        Ok(out)
    }

    /// 0/1 matrix of the permutation given by disjoint cycles on `1..=n`,
    /// sending `e_i` to `e_{sigma(i)}` under the row action.
    pub fn permutation(field: &Field, cycles: &[Vec<usize>], n: usize) -> Result<MatF> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for &v in cycle {
                if v == 0 || v > n {
                    return Err(Error::InvalidCycles(format!(
                        "index {v} out of range 1..={n}"
                    )));
                }
                if seen[v - 1] {
                    return Err(Error::InvalidCycles(format!("index {v} repeated")));
                }
                seen[v - 1] = true;
            }
            if cycle.len() >= 2 {
                for w in 0..cycle.len() {
                    image[cycle[w] - 1] = cycle[(w + 1) % cycle.len()] - 1;
                }
            }
        }
        let mut m = MatF::zero(field, n, n);
        for (i, &j) in image.iter().enumerate() {
            m.set(i, j, 1);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn f2_characteristic_identity() {
        let f = FieldTable::new(2, 1).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn f9_generator_has_order_eight() {
        let f = FieldTable::new(3, 2).unwrap();
        let g = f.generator();
        // Exhaustive oracle: compute the order of every nonzero element
        // by repeated multiplication.
        let mut orders = Vec::new();
        for a in 1..9u32 {
            let mut acc = a;
            let mut ord = 1;
            while acc != 1 {
                acc = f.mul(acc, a);
                ord += 1;
            }
            orders.push((a, ord));
            assert_eq!(f.element_order(a).unwrap(), ord);
        }
        let g_order = orders.iter().find(|&&(a, _)| a == g).unwrap().1;
        assert_eq!(g_order, 8);
        assert_eq!(f.pow(g, 8), 1);
        assert_ne!(f.pow(g, 4), 1);
    }

    #[test]
    fn four_is_not_prime() {
        assert!(matches!(FieldTable::new(4, 1), Err(Error::NonPrime(4))));
    }

    #[test]
    fn order_bound_enforced() {
        assert!(matches!(
            FieldTable::new(2, 17),
            Err(Error::FieldTooLarge { .. })
        ));
        // The bound itself is allowed.
        let f = FieldTable::new(2, 16).unwrap();
        assert_eq!(f.q(), 65536);
        assert_eq!(f.element_order(f.generator()).unwrap(), 65535);
    }

    #[test]
    fn from_order_detects_prime_powers() {
        assert_eq!(FieldTable::from_order(9).unwrap().p(), 3);
        assert_eq!(FieldTable::from_order(8).unwrap().e(), 3);
        assert!(matches!(
            FieldTable::from_order(6),
            Err(Error::NotPrimePower(6))
        ));
    }

    #[test]
    fn documented_moduli() {
        assert_eq!(FieldTable::new(2, 2).unwrap().modulus_coeffs(), &[1, 1, 1]);
        assert_eq!(FieldTable::new(2, 3).unwrap().modulus_coeffs(), &[1, 1, 0, 1]);
        assert_eq!(FieldTable::new(3, 2).unwrap().modulus_coeffs(), &[2, 1, 1]);
    }

    #[test]
    fn field_axioms_by_exhaustion() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            let f = FieldTable::new(p, e).unwrap();
            let q = f.q() as u32;
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, f.neg(a)), 0);
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity fails in F_{q} at ({a},{b},{c})"
                        );
                    }
                }
            }
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn rref_examples() {
        let f2 = FieldTable::new(2, 1).unwrap();
        let id = MatF::identity(&f2, 3);
        let r = id.rref();
        assert_eq!(r.mat, id);
        assert_eq!(r.rank, 3);

        let z = MatF::zero(&f2, 2, 4);
        let r = z.rref();
        assert_eq!(r.mat, z);
        assert_eq!(r.rank, 0);

        // Hand row-reduction oracle: {e1+e2, e2} reduces to the identity.
        let m = MatF::from_rows(&f2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.mat, MatF::identity(&f2, 2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_is_idempotent_and_canonical() {
        // Random matrices, then random invertible row operations must not
        // change the reduced form.
        let mut rng = SplitMix64::new(0xfeed);
        for &(p, e) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let f = FieldTable::new(p, e).unwrap();
            let q = f.q();
            for _ in 0..40 {
                let rows = 1 + rng.below(4) as usize;
                let cols = 1 + rng.below(5) as usize;
                let data: Vec<Vec<u32>> = (0..rows)
                    .map(|_| (0..cols).map(|_| rng.below(q) as u32).collect())
                    .collect();
                let m = MatF::from_rows(&f, &data).unwrap();
                let r1 = m.rref();
                assert_eq!(r1.mat.rref().mat, r1.mat);

                let mut scrambled = m.clone();
                for _ in 0..6 {
                    let a = rng.below(rows as u64) as usize;
                    let b = rng.below(rows as u64) as usize;
                    match rng.below(3) {
                        0 => scrambled.swap_rows(a, b),
                        1 => {
                            let s = 1 + rng.below(q - 1) as u32;
                            scrambled.scale_row(a, s);
                        }
                        _ => {
                            if a != b {
                                let s = rng.below(q) as u32;
                                scrambled.add_scaled_row(a, b, s);
                            }
                        }
                    }
                }
                assert_eq!(scrambled.rref().mat, r1.mat);
            }
        }
    }

    #[test]
    fn multiply_and_inverse_examples() {
        let f3 = FieldTable::new(3, 1).unwrap();
        let a = MatF::from_rows(&f3, &[vec![1, 1], vec![0, 1]]).unwrap();
        let id = MatF::identity(&f3, 2);
        assert_eq!(a.multiply(&id).unwrap(), a);
        assert_eq!(id.inverse().unwrap(), id);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, MatF::from_rows(&f3, &[vec![1, 2], vec![0, 1]]).unwrap());
        assert!(a.multiply(&inv).unwrap().is_identity());
    }

    #[test]
    fn random_inverses_close() {
        let mut rng = SplitMix64::new(0xabcd);
        for &q in &[2u64, 3, 4, 5] {
            let f = FieldTable::from_order(q).unwrap();
            let mut found = 0;
            while found < 10 {
                let n = 2 + rng.below(3) as usize;
                let data: Vec<Vec<u32>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.below(q) as u32).collect())
                    .collect();
                let m = MatF::from_rows(&f, &data).unwrap();
                if let Ok(inv) = m.inverse() {
                    assert!(m.multiply(&inv).unwrap().is_identity());
                    assert!(inv.multiply(&m).unwrap().is_identity());
                    found += 1;
                }
            }
        }
    }

    #[test]
    fn singular_inverse_is_rejected() {
        let f2 = FieldTable::new(2, 1).unwrap();
        let m = MatF::from_rows(&f2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(m.inverse(), Err(Error::Singular)));
        assert_eq!(m.determinant().unwrap(), 0);
    }

    #[test]
    fn determinant_matches_rank_and_products() {
        let f3 = FieldTable::new(3, 1).unwrap();
        let a = MatF::from_rows(&f3, &[vec![2, 1], vec![1, 1]]).unwrap();
        let b = MatF::from_rows(&f3, &[vec![1, 2], vec![0, 2]]).unwrap();
        let da = a.determinant().unwrap();
        let db = b.determinant().unwrap();
        let dab = a.multiply(&b).unwrap().determinant().unwrap();
        assert_eq!(dab, f3.mul(da, db));
    }

    #[test]
    fn permutation_examples() {
        let f2 = FieldTable::new(2, 1).unwrap();
        let id = MatF::permutation(&f2, &[], 3).unwrap();
        assert_eq!(id, MatF::identity(&f2, 3));

        let swap = MatF::permutation(&f2, &[vec![1, 2]], 2).unwrap();
        assert_eq!(swap, MatF::from_rows(&f2, &[vec![0, 1], vec![1, 0]]).unwrap());

        // (1,5)(4,6) on 8 coordinates: check the action on every basis vector.
        let p = MatF::permutation(&f2, &[vec![1, 5], vec![4, 6]], 8).unwrap();
        let image = |i: usize| -> usize {
            let mut v = vec![0u32; 8];
            v[i] = 1;
            let w = p.apply_row(&v).unwrap();
            w.iter().position(|&x| x == 1).unwrap()
        };
        assert_eq!(image(0), 4);
        assert_eq!(image(4), 0);
        assert_eq!(image(3), 5);
        assert_eq!(image(5), 3);
        for i in [1, 2, 6, 7] {
            assert_eq!(image(i), i);
        }
    }

    #[test]
    fn permutation_rejects_bad_cycles() {
        let f2 = FieldTable::new(2, 1).unwrap();
        assert!(matches!(
            MatF::permutation(&f2, &[vec![1, 9]], 8),
            Err(Error::InvalidCycles(_))
        ));
        assert!(matches!(
            MatF::permutation(&f2, &[vec![1, 2], vec![2, 3]], 8),
            Err(Error::InvalidCycles(_))
        ));
    }

    #[test]
    fn permutation_matrices_respect_composition() {
        // Group homomorphism: P(sigma) * P(tau) applies sigma then tau
        // under the row action.
        let f3 = FieldTable::new(3, 1).unwrap();
        let mut rng = SplitMix64::new(99);
        let n = 6usize;
        let random_perm = |rng: &mut SplitMix64| -> Vec<usize> {
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.below(i as u64 + 1) as usize;
                perm.swap(i, j);
            }
            perm
        };
        let to_cycles = |perm: &[usize]| -> Vec<Vec<usize>> {
            let mut seen = vec![false; n];
            let mut cycles = Vec::new();
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut cyc = vec![start + 1];
                seen[start] = true;
                let mut cur = perm[start];
                while cur != start {
                    seen[cur] = true;
                    cyc.push(cur + 1);
                    cur = perm[cur];
                }
                if cyc.len() > 1 {
                    cycles.push(cyc);
                }
            }
            cycles
        };
        for _ in 0..25 {
            let sigma = random_perm(&mut rng);
            let tau = random_perm(&mut rng);
            let composed: Vec<usize> = (0..n).map(|i| tau[sigma[i]]).collect();
            let ps = MatF::permutation(&f3, &to_cycles(&sigma), n).unwrap();
            let pt = MatF::permutation(&f3, &to_cycles(&tau), n).unwrap();
            let pc = MatF::permutation(&f3, &to_cycles(&composed), n).unwrap();
            assert_eq!(ps.multiply(&pt).unwrap(), pc);
        }
    }

    #[test]
    fn display_form() {
        let f2 = FieldTable::new(2, 1).unwrap();
        let m = MatF::from_rows(&f2, &[vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(m.to_string(), "1,0,1;0,1,0");
    }
}
