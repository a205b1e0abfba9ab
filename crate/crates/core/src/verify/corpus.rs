use crate::ring::{FiniteCommRing, Module, RingBuilder, RingError, RingExtension, SubringLattice};

/// A named extension `R ⊆ S` from the corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub ext: RingExtension,
}

fn push(out: &mut Vec<FiniteCommRing>, ring: Result<FiniteCommRing, RingError>) {
    if let Ok(ring) = ring {
        if !out.iter().any(|r| r == &ring) {
            out.push(ring);
        }
    }
}

/// Monic polynomials of degree `deg` over a ring of order `q`, as base
/// element indices, low degree first.
fn monic(q: usize, deg: usize) -> Vec<Vec<usize>> {
    let count = q.pow(deg as u32);
    (0..count)
        .map(|mut k| {
            let mut coeffs = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                coeffs.push(k % q);
                k /= q;
            }
            coeffs.push(usize::MAX);
            coeffs
        })
        .collect()
}

/// Rings of order at most `max_order` from the constructor grammar:
/// residue rings of `Z`, Galois fields, monic polynomial quotients over small
/// bases, products and idealizations. Rings with identical tables appear once.
pub fn ring_corpus(max_order: usize, builder: &RingBuilder) -> Vec<FiniteCommRing> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        push(&mut out, builder.zmod(n));
    }
    for p in [2u32, 3, 5, 7, 11, 13] {
        let mut q = p as usize * p as usize;
        let mut deg = 2;
        while q <= max_order {
            push(&mut out, builder.gf_default(p, deg));
            q *= p as usize;
            deg += 1;
        }
    }
    let bases: Vec<FiniteCommRing> = out.iter().filter(|r| r.order() <= 4).cloned().collect();
    for base in &bases {
        let one = base.one();
        let mut deg = 2;
        while base.order().pow(deg as u32) <= max_order {
            for mut f in monic(base.order(), deg) {
                *f.last_mut().unwrap() = one;
                push(&mut out, builder.poly_quotient(base, &f));
            }
            deg += 1;
        }
    }
    let singles = out.clone();
    for (i, a) in singles.iter().enumerate() {
        for b in &singles[i..] {
            if a.order() * b.order() <= max_order {
                push(&mut out, builder.product(&[a, b]));
                for c in &singles {
                    if a.order() * b.order() * c.order() <= max_order && c.order() >= b.order() {
                        push(&mut out, builder.product(&[a, b, c]));
                    }
                }
            }
        }
    }
    let f2 = builder.zmod(2).expect("F2");
    if 16 <= max_order {
        push(&mut out, builder.product(&[&f2, &f2, &f2, &f2]));
    }
    for base in &singles {
        for rank in 1..=3u32 {
            if base.order().pow(rank + 1) <= max_order {
                if let Ok(m) = Module::free(base, rank) {
                    push(&mut out, builder.idealization(&m));
                }
            }
        }
        for x in 0..base.order() {
            if let Ok(m) = Module::cyclic(base, &[x]) {
                if m.order() > 1 && base.order() * m.order() <= max_order {
                    push(&mut out, builder.idealization(&m));
                }
            }
        }
    }
    out.sort_by_key(|r| r.order());
    out
}

/// Every subring `R` of every corpus ring `S`, as `R ⊆ S`.
pub fn extension_corpus(max_order: usize, builder: &RingBuilder) -> Vec<CorpusEntry> {
    let mut entries = Vec::new();
    for s in ring_corpus(max_order, builder) {
        let prime = s.close(&s.empty_set());
        let subrings = SubringLattice::between(&s, &prime, &s.full_set()).expect("prime subring");
        for (i, r) in subrings.members().iter().enumerate() {
            let ext = RingExtension::from_subring(&s, r).expect("member is a subring");
            entries.push(CorpusEntry {
                name: format!("{} over T{i}", s.recipe()),
                ext,
            });
        }
    }
    entries
}

/// Larger named extensions exercised on top of the exhaustive corpus.
pub fn named_extensions(builder: &RingBuilder) -> Result<Vec<CorpusEntry>, RingError> {
    let f2 = builder.zmod(2)?;
    let f4 = builder.gf_default(2, 2)?;
    let f16 = builder.gf_default(2, 4)?;
    let f64 = builder.gf_default(2, 6)?;
    let f2_f4 = builder.product(&[&f2, &f4])?;
    let f2_5 = builder.product(&[&f2, &f2, &f2, &f2, &f2])?;
    let f4_f16 = builder.product(&[&f4, &f16])?;
    let f4_f4_f2 = builder.product(&[&f4, &f4, &f2])?;
    let dual = builder.poly_quotient(&f2, &[0, 0, 1])?;

    let mut entries = vec![
        ("F2 in F2 x F4", RingExtension::over_prime_subring(&f2_f4)),
        ("F2 in F64", RingExtension::over_prime_subring(&f64)),
        ("F2 in F2^5", RingExtension::over_prime_subring(&f2_5)),
        ("F2 in F4 x F16", RingExtension::over_prime_subring(&f4_f16)),
        ("F2 in F4 x F4 x F2", RingExtension::over_prime_subring(&f4_f4_f2)),
    ];
    let ext = RingExtension::over_prime_subring(&f2_f4);
    entries.push(("F2(+)M in (F2 x F4)(+)M", ext.idealize(&Module::free(&f2_f4, 1)?, builder)?));
    let d = RingExtension::over_prime_subring(&dual);
    entries.push(("F2 x F2 in F2 x F2[x]/(x^2) x 2", RingExtension::product(&[&d, &d], builder)?));
    Ok(entries
        .into_iter()
        .map(|(name, ext)| CorpusEntry {
            name: name.to_string(),
            ext,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_is_deterministic() {
        let b = RingBuilder::default();
        let a: Vec<String> = extension_corpus(8, &b).into_iter().map(|e| e.name).collect();
        let c: Vec<String> = extension_corpus(8, &b).into_iter().map(|e| e.name).collect();
        assert_eq!(a, c);
        assert!(a.iter().any(|n| n == "Z/2 x F4 over T0"));
    }

    #[test]
    fn named_extensions_build() {
        assert!(named_extensions(&RingBuilder::default()).unwrap().len() >= 7);
    }
}
