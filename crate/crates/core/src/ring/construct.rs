use super::{FiniteCommRing, Module, RingError, DEFAULT_RING_CAP, MAX_RING_ORDER};
use crate::fpoly;

/// Constructors with a configurable size cap.
#[derive(Debug, Clone, Copy)]
pub struct RingBuilder {
    cap: usize,
}

impl Default for RingBuilder {
    fn default() -> Self {
        RingBuilder { cap: DEFAULT_RING_CAP }
    }
}

impl RingBuilder {
    /// `cap` is clamped to [`MAX_RING_ORDER`].
    pub fn new(cap: usize) -> Self {
        RingBuilder {
            cap: cap.min(MAX_RING_ORDER),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, order: u128) -> Result<usize, RingError> {
        if order > self.cap as u128 {
            Err(RingError::TooLarge { order, cap: self.cap })
        } else {
            Ok(order as usize)
        }
    }

    /// `ℤ/n`, elements `0..n` in natural order.
    pub fn zmod(&self, n: usize) -> Result<FiniteCommRing, RingError> {
        if n < 2 {
            return Err(RingError::InvalidSpec("Z/n needs n >= 2".into()));
        }
        let n = self.check(n as u128)?;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(((a + b) % n) as u16);
                mul.push((a * b % n) as u16);
            }
        }
        let names = (0..n).map(|a| a.to_string()).collect();
        FiniteCommRing::from_raw(n, add, mul, 0, 1, names, format!("Z/{n}"))
    }

    /// `F_p[x]/(f)` for a monic irreducible `f`, coefficients low degree first.
    pub fn gf(&self, p: u32, modulus: &[u32]) -> Result<FiniteCommRing, RingError> {
        if !fpoly::is_prime(p as u64) {
            return Err(RingError::NotPrime(p as u64));
        }
        let deg = fpoly::degree(modulus).unwrap_or(0);
        if deg == 0 || modulus[deg] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(RingError::InvalidSpec(format!(
                "modulus {modulus:?} must be monic of positive degree over F_{p}"
            )));
        }
        if !fpoly::is_irreducible(modulus, p) {
            return Err(RingError::NotIrreducible {
                poly: modulus.to_vec(),
                p,
            });
        }
        let q = (p as u128).pow(deg as u32);
        self.check(q)?;
        let base = self.zmod(p as usize)?;
        let coeffs: Vec<usize> = modulus[..=deg].iter().map(|&c| c as usize).collect();
        Ok(self.poly_quotient(&base, &coeffs)?.with_recipe(format!("F{q}")))
    }

    /// `F_{p^deg}` over the least irreducible polynomial of that degree.
    pub fn gf_default(&self, p: u32, deg: usize) -> Result<FiniteCommRing, RingError> {
        if !fpoly::is_prime(p as u64) {
            return Err(RingError::NotPrime(p as u64));
        }
        if deg == 0 {
            return Err(RingError::InvalidSpec("field degree must be positive".into()));
        }
        self.check((p as u128).saturating_pow(deg as u32))?;
        self.gf(p, &fpoly::least_irreducible(p, deg))
    }

    /// `base[x]/(f)` for a monic `f` given by base element indices, low
    /// degree first. Element `Σ c_i x^i` has index `Σ c_i |base|^i`.
    pub fn poly_quotient(&self, base: &FiniteCommRing, coeffs: &[usize]) -> Result<FiniteCommRing, RingError> {
        let d = coeffs.len().saturating_sub(1);
        if d == 0 || coeffs[d] != base.one() || coeffs.iter().any(|&c| c >= base.order()) {
            return Err(RingError::InvalidSpec(
                "modulus must be monic of positive degree with coefficients in the base".into(),
            ));
        }
        let b = base.order();
        let order = self.check((b as u128).saturating_pow(d as u32))?;
        let digits = |mut idx: usize| {
            let mut v = vec![0; d];
            for slot in v.iter_mut() {
                *slot = idx % b;
                idx /= b;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * b + c);
        let elems: Vec<Vec<usize>> = (0..order).map(digits).collect();
        let mut add = Vec::with_capacity(order * order);
        let mut mul = Vec::with_capacity(order * order);
        let mut prod = vec![base.zero(); 2 * d];
        for x in &elems {
            for y in &elems {
                let s: Vec<usize> = x.iter().zip(y).map(|(&u, &v)| base.add(u, v)).collect();
                add.push(encode(&s) as u16);
                prod.iter_mut().for_each(|c| *c = base.zero());
                for (i, &u) in x.iter().enumerate() {
                    for (j, &v) in y.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(u, v));
                    }
                }
                // x^k = x^(k-d) · (x^d) and x^d = -Σ_{j<d} f_j x^j
                for k in (d..2 * d - 1).rev() {
                    let c = prod[k];
                    if c == base.zero() {
                        continue;
                    }
                    prod[k] = base.zero();
                    for (j, &f) in coeffs[..d].iter().enumerate() {
                        prod[k - d + j] = base.sub(prod[k - d + j], base.mul(c, f));
                    }
                }
                mul.push(encode(&prod[..d]) as u16);
            }
        }
        let names = elems.iter().map(|v| poly_name(base, v)).collect();
        let zero = encode(&vec![base.zero(); d]);
        let mut one_v = vec![base.zero(); d];
        one_v[0] = base.one();
        let modulus = poly_name(base, coeffs);
        FiniteCommRing::from_raw(
            order,
            add,
            mul,
            zero,
            encode(&one_v),
            names,
            format!("{}[x]/({modulus})", base.recipe()),
        )
    }

    /// Direct product, first factor most significant; elements named
    /// `(a,b,...)`.
    pub fn product(&self, factors: &[&FiniteCommRing]) -> Result<FiniteCommRing, RingError> {
        if factors.is_empty() {
            return Err(RingError::InvalidSpec("product of no factors".into()));
        }
        let order = self.check(factors.iter().map(|f| f.order() as u128).product())?;
        let sizes: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let decode = |mut idx: usize| {
            let mut v = vec![0; sizes.len()];
            for (i, &s) in sizes.iter().enumerate().rev() {
                v[i] = idx % s;
                idx /= s;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().zip(&sizes).fold(0, |acc, (&c, &s)| acc * s + c);
        let elems: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let mut add = Vec::with_capacity(order * order);
        let mut mul = Vec::with_capacity(order * order);
        let mut buf = vec![0; sizes.len()];
        for x in &elems {
            for y in &elems {
                for (i, f) in factors.iter().enumerate() {
                    buf[i] = f.add(x[i], y[i]);
                }
                add.push(encode(&buf) as u16);
                for (i, f) in factors.iter().enumerate() {
                    buf[i] = f.mul(x[i], y[i]);
                }
                mul.push(encode(&buf) as u16);
            }
        }
        let names = elems
            .iter()
            .map(|v| {
                let parts: Vec<&str> = v.iter().zip(factors).map(|(&c, f)| f.name(c)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let zero: Vec<usize> = factors.iter().map(|f| f.zero()).collect();
        let one: Vec<usize> = factors.iter().map(|f| f.one()).collect();
        let recipe = factors.iter().map(|f| f.recipe()).collect::<Vec<_>>().join(" x ");
        FiniteCommRing::from_raw(order, add, mul, encode(&zero), encode(&one), names, recipe)
    }

    /// `base / (gens)`.
    pub fn quotient(&self, base: &FiniteCommRing, gens: &[usize]) -> Result<FiniteCommRing, RingError> {
        if gens.iter().any(|&g| g >= base.order()) {
            return Err(RingError::InvalidSpec("ideal generator out of range".into()));
        }
        let ideal = base.ideal_generated(&base.full_set(), gens.iter().copied());
        let (ring, _) = base.quotient_by(&ideal)?;
        let gen_names: Vec<&str> = gens.iter().map(|&g| base.name(g)).collect();
        Ok(ring.with_recipe(format!("{}/({})", base.recipe(), gen_names.join(","))))
    }

    /// `R(+)M` on pairs `(r, m)` with `(r,m)(s,n) = (rs, rn + sm)`; index
    /// `r·|M| + m`.
    pub fn idealization(&self, module: &Module) -> Result<FiniteCommRing, RingError> {
        module.verify()?;
        let r = module.ring();
        let m = module.order();
        let order = self.check((r.order() * m) as u128)?;
        let mut add = Vec::with_capacity(order * order);
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            let (ra, ma) = (a / m, a % m);
            for b in 0..order {
                let (rb, mb) = (b / m, b % m);
                add.push((r.add(ra, rb) * m + module.add(ma, mb)) as u16);
                let mm = module.add(module.act(ra, mb), module.act(rb, ma));
                mul.push((r.mul(ra, rb) * m + mm) as u16);
            }
        }
        let names = (0..order)
            .map(|a| format!("({},{})", r.name(a / m), module.name(a % m)))
            .collect();
        FiniteCommRing::from_raw(
            order,
            add,
            mul,
            r.zero() * m + module.zero_element(),
            r.one() * m + module.zero_element(),
            names,
            format!("{}(+){}", r.recipe(), module.description()),
        )
    }

    /// Explicit square tables. Element `i` is named `e{i}`.
    pub fn from_tables(
        &self,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: usize,
        one: usize,
    ) -> Result<FiniteCommRing, RingError> {
        let n = self.check(add.len() as u128)?;
        let square = |t: &[Vec<usize>]| t.len() == n && t.iter().all(|row| row.len() == n);
        if !square(add) || !square(mul) {
            return Err(RingError::InvalidSpec("tables must be square and of equal size".into()));
        }
        if add.iter().chain(mul).flatten().any(|&v| v >= n) {
            return Err(RingError::InvalidSpec("table entry out of range".into()));
        }
        let flat = |t: &[Vec<usize>]| t.iter().flatten().map(|&v| v as u16).collect();
        let names = (0..n).map(|i| format!("e{i}")).collect();
        FiniteCommRing::from_raw(n, flat(add), flat(mul), zero, one, names, format!("table({n})"))
    }
}

fn poly_name(base: &FiniteCommRing, coeffs: &[usize]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == base.zero() {
            continue;
        }
        let monomial = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let coeff = base.name(c);
        let coeff = if coeff.contains(['+', ',']) {
            format!("({coeff})")
        } else {
            coeff.to_string()
        };
        terms.push(match (i, c == base.one()) {
            (0, _) => coeff,
            (_, true) => monomial,
            _ => format!("{coeff}{monomial}"),
        });
    }
    if terms.is_empty() {
        base.name(base.zero()).to_string()
    } else {
        terms.join("+")
    }
}

impl FiniteCommRing {
    pub fn zmod(n: usize) -> Result<Self, RingError> {
        RingBuilder::default().zmod(n)
    }

    pub fn gf(p: u32, modulus: &[u32]) -> Result<Self, RingError> {
        RingBuilder::default().gf(p, modulus)
    }

    pub fn gf_default(p: u32, deg: usize) -> Result<Self, RingError> {
        RingBuilder::default().gf_default(p, deg)
    }

    pub fn poly_quotient(base: &FiniteCommRing, coeffs: &[usize]) -> Result<Self, RingError> {
        RingBuilder::default().poly_quotient(base, coeffs)
    }

    pub fn product(factors: &[&FiniteCommRing]) -> Result<Self, RingError> {
        RingBuilder::default().product(factors)
    }

    pub fn quotient(base: &FiniteCommRing, gens: &[usize]) -> Result<Self, RingError> {
        RingBuilder::default().quotient(base, gens)
    }

    pub fn idealization(module: &Module) -> Result<Self, RingError> {
        RingBuilder::default().idealization(module)
    }
}
