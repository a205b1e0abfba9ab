//! `F_p ⊆ F_{p^n}` with the minimal polynomials of a primitive element over
//! each intermediate field, ordered by divisibility.

use serde::{Deserialize, Serialize};

use crate::fpoly::{self, Poly};
use crate::lattice::{FiniteLattice, LatticeError};

/// Towers are limited to `p^n ≤ 2^16`.
pub const MAX_TOWER_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p}^{n} exceeds 2^16")]
    TooLarge { p: u64, n: u32 },
    #[error("degree {0} is not a divisor of the tower degree")]
    NotADivisor(u32),
    #[error("minimal polynomial over F_p^{0} has a coefficient outside that field")]
    CoefficientOutsideField(u32),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub p: u64,
    pub n: u32,
}

impl TowerSpec {
    pub fn build(&self) -> Result<FieldTower, TowerError> {
        FieldTower::new(self.p, self.n)
    }
}

/// Polynomial over `F_{p^n}`, coefficients low degree first.
pub type ExtPoly = Vec<Poly>;

/// `F_{p^n} = F_p[x]/(f)` with `f` the least irreducible of degree `n`, and
/// `x` the class of the variable.
#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u32,
    n: u32,
    modulus: Poly,
    divisors: Vec<u32>,
    minimal: Vec<ExtPoly>,
}

impl FieldTower {
    pub fn new(p: u64, n: u32) -> Result<Self, TowerError> {
        if !fpoly::is_prime(p) {
            return Err(TowerError::NotPrime(p));
        }
        if n == 0 || p.checked_pow(n).is_none_or(|q| q > MAX_TOWER_ORDER) {
            return Err(TowerError::TooLarge { p, n });
        }
        let modulus = fpoly::least_irreducible(p as u32, n as usize);
        let mut tower = FieldTower {
            p: p as u32,
            n,
            modulus,
            divisors: (1..=n).filter(|d| n % d == 0).collect(),
            minimal: Vec::new(),
        };
        tower.minimal = tower
            .divisors
            .iter()
            .map(|&d| tower.conjugate_product(d))
            .collect::<Result<_, _>>()?;
        Ok(tower)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Degrees `d | n` of the intermediate fields `F_{p^d}`, increasing.
    pub fn field_degrees(&self) -> &[u32] {
        &self.divisors
    }

    fn fmul(&self, a: &[u32], b: &[u32]) -> Poly {
        fpoly::rem(&fpoly::mul(a, b, self.p), &self.modulus, self.p)
    }

    fn frobenius(&self, a: &[u32], times: u32) -> Poly {
        let e = (self.p as u64).pow(times);
        if a.is_empty() {
            return Vec::new();
        }
        fpoly::pow_rem(a, e, &self.modulus, self.p)
    }

    /// `∏_{i < n/d} (X − x^{p^{d i}})`, checked to lie in `F_{p^d}[X]`.
    fn conjugate_product(&self, d: u32) -> Result<ExtPoly, TowerError> {
        let x: Poly = fpoly::rem(&[0, 1], &self.modulus, self.p);
        let mut acc: ExtPoly = vec![vec![1]];
        let mut root = x;
        for _ in 0..self.n / d {
            // acc · (X − root)
            let mut next: ExtPoly = vec![Vec::new(); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                let negated = fpoly::sub(&[], c, self.p);
                next[i + 1] = fpoly::sub(&next[i + 1], &negated, self.p);
                next[i] = fpoly::sub(&next[i], &self.fmul(c, &root), self.p);
            }
            acc = next;
            root = self.frobenius(&root, d);
        }
        if acc.iter().any(|c| self.frobenius(c, d) != *c) {
            return Err(TowerError::CoefficientOutsideField(d));
        }
        Ok(acc)
    }

    /// Minimal polynomial of `x` over `F_{p^d}`.
    pub fn minimal_poly(&self, d: u32) -> Result<&ExtPoly, TowerError> {
        let i = self.divisors.iter().position(|&e| e == d).ok_or(TowerError::NotADivisor(d))?;
        Ok(&self.minimal[i])
    }

    /// `g | f` for monic `g`, by long division in `F_{p^n}[X]`.
    pub fn divides(&self, g: &ExtPoly, f: &ExtPoly) -> bool {
        if g.len() > f.len() {
            return false;
        }
        let mut r = f.clone();
        let dg = g.len() - 1;
        for top in (dg..r.len()).rev() {
            let c = r[top].clone();
            if c.is_empty() {
                continue;
            }
            for (j, gj) in g.iter().enumerate() {
                let k = top - dg + j;
                r[k] = fpoly::sub(&r[k], &self.fmul(&c, gj), self.p);
            }
        }
        r.iter().all(Vec::is_empty)
    }

    /// The minimal polynomials ordered by divisibility, labelled by their
    /// field degree (`f_d` for `F_{p^d}`), in the order of
    /// [`field_degrees`](Self::field_degrees).
    pub fn polynomial_lattice(&self) -> Result<FiniteLattice, TowerError> {
        let k = self.minimal.len();
        let below = |a: usize, b: usize| a != b && self.divides(&self.minimal[a], &self.minimal[b]);
        let mut covers = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if below(a, b) && !(0..k).any(|c| below(a, c) && below(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        let labels = self.divisors.iter().map(|d| format!("f{d}")).collect();
        Ok(FiniteLattice::from_indexed(labels, covers)?)
    }

    pub fn format_element(&self, a: &[u32]) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                match i {
                    0 => coeff,
                    1 => format!("{coeff}x"),
                    _ => format!("{coeff}x^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    pub fn format_poly(&self, f: &ExtPoly) -> String {
        let terms: Vec<String> = f
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_empty())
            .map(|(i, c)| {
                let element = self.format_element(c);
                let coeff = if c.as_slice() == [1] && i > 0 {
                    String::new()
                } else if element.contains('+') && i > 0 {
                    format!("({element})")
                } else {
                    element
                };
                match i {
                    0 => coeff,
                    1 => format!("{coeff}X"),
                    _ => format!("{coeff}X^{i}"),
                }
            })
            .collect();
        terms.join(" + ")
    }
}

/// Number of prime factors counted with multiplicity.
pub fn big_omega(mut n: u64) -> usize {
    let mut count = 0;
    let mut q = 2;
    while q * q <= n {
        while n % q == 0 {
            n /= q;
            count += 1;
        }
        q += 1;
    }
    count + usize::from(n > 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub p: u64,
    pub n: u32,
    pub modulus: String,
    pub minimal_polynomials: Vec<(u32, String)>,
    /// `d ↦ f_d` reverses the divisor lattice of `n`.
    pub order_reversing: bool,
    /// `d ⋖ e` exactly when `f_e` is a maximal proper divisor of `f_d`.
    pub covers_match: bool,
    pub chain_lengths: Vec<usize>,
    pub expected_length: usize,
    pub degrees_multiply: bool,
    pub graded_matches: bool,
    pub holds: bool,
}

/// Structure of the minimal-polynomial lattice against the divisors of `n`.
pub fn check_polynomial_lattice(tower: &FieldTower) -> Result<TowerReport, TowerError> {
    let poly_lattice = tower.polynomial_lattice()?;
    let fields = FiniteLattice::divisors(tower.n as u64);
    let degrees = tower.field_degrees();
    // Both lattices list the divisors in increasing order.
    let map: Vec<usize> = (0..degrees.len()).collect();
    let order_reversing = fields.dual().is_isomorphism(&poly_lattice, &map);
    let covers_match = (0..degrees.len()).all(|a| {
        (0..degrees.len()).all(|b| {
            let field_cover = fields.covers_pair(a, b);
            let maximal_divisor = poly_lattice.covers_pair(b, a);
            field_cover == maximal_divisor
        })
    });
    let chain_lengths = poly_lattice.maximal_chain_lengths(poly_lattice.bottom(), poly_lattice.top())?;
    let expected_length = big_omega(tower.n as u64);
    let degrees_multiply = degrees
        .iter()
        .all(|&d| tower.minimal_poly(d).map(|f| (f.len() - 1) as u32 * d == tower.n).unwrap_or(false));
    let graded_matches = poly_lattice.is_graded().graded == fields.is_graded().graded;
    let holds =
        order_reversing && covers_match && chain_lengths == [expected_length] && degrees_multiply && graded_matches;
    Ok(TowerReport {
        p: tower.p(),
        n: tower.n,
        modulus: fpoly_string(&tower.modulus),
        minimal_polynomials: degrees
            .iter()
            .map(|&d| (d, tower.format_poly(tower.minimal_poly(d).expect("divisor"))))
            .collect(),
        order_reversing,
        covers_match,
        chain_lengths,
        expected_length,
        degrees_multiply,
        graded_matches,
        holds,
    })
}

fn fpoly_string(f: &[u32]) -> String {
    let terms: Vec<String> = f
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            }
        })
        .collect();
    terms.join(" + ")
}
