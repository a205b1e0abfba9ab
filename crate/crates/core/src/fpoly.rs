//! Dense polynomials over a prime field `F_p`, coefficients low degree first.

pub type Poly = Vec<u32>;

pub fn is_prime(n: u64) -> bool {
    crate::lattice::is_prime(n)
}

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut acc = 1u64;
    let mut base = a as u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

pub fn sub(f: &[u32], g: &[u32], p: u32) -> Poly {
    let n = f.len().max(g.len());
    trim(
        (0..n)
            .map(|i| {
                let a = f.get(i).copied().unwrap_or(0);
                let b = g.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect(),
    )
}

pub fn mul(f: &[u32], g: &[u32], p: u32) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `f` modulo a nonzero `g`.
pub fn rem(f: &[u32], g: &[u32], p: u32) -> Poly {
    let dg = degree(g).expect("division by the zero polynomial");
    let lead_inv = inv_mod(g[dg], p) as u64;
    let mut r = trim(f.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - dg;
        for (j, &gj) in g.iter().enumerate().take(dg + 1) {
            let t = c * gj as u64 % p as u64;
            r[shift + j] = ((r[shift + j] as u64 + p as u64 - t) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

pub fn gcd(f: &[u32], g: &[u32], p: u32) -> Poly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

pub fn pow_rem(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        b = rem(&mul(&b, &b, p), modulus, p);
        e >>= 1;
    }
    acc
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(p^n) = x mod f`
/// and `gcd(x^(p^(n/q)) - x, f) = 1` for each prime `q | n`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![rem(&x, f, p)];
    for _ in 0..n {
        let next = pow_rem(frob.last().unwrap(), p as u64, f, p);
        frob.push(next);
    }
    if sub(&frob[n], &rem(&x, f, p), p) != Vec::<u32>::new() {
        return false;
    }
    (2..=n as u64)
        .filter(|&q| n as u64 % q == 0 && is_prime(q))
        .all(|q| {
            let h = sub(&frob[n / q as usize], &x, p);
            degree(&gcd(&h, f, p)) == Some(0)
        })
}

/// Monic degree-`n` polynomial whose lower coefficients, read as base-`p`
/// digits with the constant term least significant, form the smallest
/// number among all irreducible ones.
pub fn least_irreducible(p: u32, n: usize) -> Poly {
    assert!(n >= 1);
    let count = (p as u64).pow(n as u32);
    for code in 0..count {
        let mut f = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
