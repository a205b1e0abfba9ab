use super::{ElementSet, FiniteCommRing, Module, RingBuilder, RingError};

/// `R ⊆ S` given by an injective unital homomorphism. Most analysis works
/// inside `S` on the image of `R`, available as [`RingExtension::base_set`].
#[derive(Debug, Clone)]
pub struct RingExtension {
    base: FiniteCommRing,
    top: FiniteCommRing,
    embed: Vec<usize>,
    base_set: ElementSet,
}

/// A residue ring `R/M` identified as the field of order `p^degree`.
#[derive(Debug, Clone)]
pub struct ResidueField {
    pub ring: FiniteCommRing,
    pub characteristic: usize,
    pub degree: u32,
}

impl ResidueField {
    fn identify(ring: FiniteCommRing) -> Result<Self, RingError> {
        if !ring.is_field(&ring.full_set()) {
            return Err(RingError::NotMaximal);
        }
        let p = ring.characteristic();
        let (mut q, mut degree) = (ring.order(), 0);
        while q > 1 {
            debug_assert_eq!(q % p, 0);
            q /= p;
            degree += 1;
        }
        Ok(ResidueField {
            ring,
            characteristic: p,
            degree,
        })
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }
}

/// Residue fields `κ(P) → κ(Q)` for `P = Q ∩ R`; `degree` is the field degree.
#[derive(Debug, Clone)]
pub struct ResidueExtension {
    pub lower: ResidueField,
    pub upper: ResidueField,
    pub degree: u32,
}

impl ResidueExtension {
    /// Finite fields of equal order are isomorphic.
    pub fn is_isomorphism(&self) -> bool {
        self.degree == 1
    }
}

impl RingExtension {
    pub fn new(base: FiniteCommRing, top: FiniteCommRing, embed: Vec<usize>) -> Result<Self, RingError> {
        let bad = |msg: &str| Err(RingError::NotAHomomorphism(msg.to_string()));
        if embed.len() != base.order() || embed.iter().any(|&x| x >= top.order()) {
            return bad("map does not send every element into the top ring");
        }
        let base_set = top.set_of(embed.iter().copied());
        if base_set.count_ones(..) != base.order() {
            return bad("map is not injective");
        }
        if embed[base.one()] != top.one() {
            return bad("map does not preserve 1");
        }
        for a in 0..base.order() {
            for b in 0..base.order() {
                if embed[base.add(a, b)] != top.add(embed[a], embed[b])
                    || embed[base.mul(a, b)] != top.mul(embed[a], embed[b])
                {
                    return bad("map does not preserve + or ×");
                }
            }
        }
        Ok(RingExtension {
            base,
            top,
            embed,
            base_set,
        })
    }

    /// The subring on `members` as the base ring.
    pub fn from_subring(top: &FiniteCommRing, members: &ElementSet) -> Result<Self, RingError> {
        if !top.is_subring(members) {
            return Err(RingError::NotASubring);
        }
        let recipe = format!("subring of {} of order {}", top.recipe(), members.count_ones(..));
        let (base, old) = top.restrict(members, top.one(), recipe)?;
        Ok(RingExtension {
            base,
            top: top.clone(),
            embed: old,
            base_set: members.clone(),
        })
    }

    /// Base ring generated by the listed elements of `top`.
    pub fn generated(top: &FiniteCommRing, gens: &[usize]) -> Result<Self, RingError> {
        if gens.iter().any(|&g| g >= top.order()) {
            return Err(RingError::InvalidSpec("generator index out of range".into()));
        }
        let members = top.close(&top.set_of(gens.iter().copied()));
        RingExtension::from_subring(top, &members)
    }

    pub fn over_prime_subring(top: &FiniteCommRing) -> Self {
        RingExtension::generated(top, &[]).expect("the prime subring is a subring")
    }

    pub fn identity(ring: &FiniteCommRing) -> Self {
        RingExtension::from_subring(ring, &ring.full_set()).expect("a ring is a subring of itself")
    }

    pub fn base(&self) -> &FiniteCommRing {
        &self.base
    }

    pub fn top(&self) -> &FiniteCommRing {
        &self.top
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embed
    }

    pub fn base_set(&self) -> &ElementSet {
        &self.base_set
    }

    pub fn is_proper(&self) -> bool {
        self.base.order() < self.top.order()
    }

    /// Smallest subring of `S` containing the image of `R` and `subset`.
    pub fn subalgebra_generated(&self, subset: impl IntoIterator<Item = usize>) -> ElementSet {
        self.top.close_over(&self.base_set, subset)
    }

    /// `(R : S)` inside `S`.
    pub fn conductor(&self) -> ElementSet {
        self.top.conductor(&self.base_set, &self.top.full_set())
    }

    /// Maximal ideals of `R`, as subsets of `S`.
    pub fn base_maximal_ideals(&self) -> Vec<ElementSet> {
        self.top.maximal_ideals(&self.base_set)
    }

    fn idempotent_of(&self, m: &ElementSet) -> Result<usize, RingError> {
        self.top
            .maximal_ideals_with_idempotents(&self.base_set)
            .into_iter()
            .find(|(_, candidate)| candidate == m)
            .map(|(e, _)| e)
            .ok_or(RingError::NotMaximal)
    }

    /// `R_M ⊆ S_M`, realized as `Re ⊆ Se` for the primitive idempotent `e`
    /// of `R` whose local factor carries `M`.
    pub fn localize_at(&self, m: &ElementSet) -> Result<RingExtension, RingError> {
        let e = self.idempotent_of(m)?;
        let s_e = self.top.scale(&self.top.full_set(), e);
        let (local_top, old) = self
            .top
            .restrict(&s_e, e, format!("({})_M", self.top.recipe()))?;
        let r_e = self.top.scale(&self.base_set, e);
        let members = local_top.set_of(old.iter().enumerate().filter(|(_, x)| r_e.contains(**x)).map(|(i, _)| i));
        RingExtension::from_subring(&local_top, &members)
    }

    /// Maximal ideals `M` of `R` with `R_M ≠ S_M`.
    pub fn support(&self) -> Vec<ElementSet> {
        self.top
            .maximal_ideals_with_idempotents(&self.base_set)
            .into_iter()
            .filter(|(e, _)| {
                let r = self.top.scale(&self.base_set, *e).count_ones(..);
                let s = self.top.scale(&self.top.full_set(), *e).count_ones(..);
                r != s
            })
            .map(|(_, m)| m)
            .collect()
    }

    /// `κ_R(Q ∩ R) → κ_S(Q)` for a maximal ideal `Q` of `S`.
    pub fn residue_extension(&self, q: &ElementSet) -> Result<ResidueExtension, RingError> {
        let full = self.top.full_set();
        if !self.top.maximal_ideals(&full).contains(q) {
            return Err(RingError::NotMaximal);
        }
        let (upper, _) = self.top.quotient_by(q)?;
        let p_base = self
            .base
            .set_of((0..self.base.order()).filter(|&i| q.contains(self.embed[i])));
        let (lower, _) = self.base.quotient_by(&p_base)?;
        let upper = ResidueField::identify(upper)?;
        let lower = ResidueField::identify(lower)?;
        let degree = upper.degree / lower.degree;
        Ok(ResidueExtension { lower, upper, degree })
    }

    /// `R/I ⊆ S/J` with `I = J ∩ R`.
    pub fn quotient_extension(&self, j: &ElementSet) -> Result<RingExtension, RingError> {
        let (q, proj) = self.top.quotient_by(j)?;
        let image = q.set_of(self.base_set.ones().map(|x| proj[x]));
        RingExtension::from_subring(&q, &image)
    }

    /// Componentwise extension `∏ R_i ⊆ ∏ S_i`.
    pub fn product(parts: &[&RingExtension], builder: &RingBuilder) -> Result<RingExtension, RingError> {
        let bases: Vec<&FiniteCommRing> = parts.iter().map(|e| &e.base).collect();
        let tops: Vec<&FiniteCommRing> = parts.iter().map(|e| &e.top).collect();
        let base = builder.product(&bases)?;
        let top = builder.product(&tops)?;
        let base_sizes: Vec<usize> = bases.iter().map(|r| r.order()).collect();
        let top_sizes: Vec<usize> = tops.iter().map(|r| r.order()).collect();
        let embed = (0..base.order())
            .map(|mut idx| {
                let mut coords = vec![0; parts.len()];
                for i in (0..parts.len()).rev() {
                    coords[i] = idx % base_sizes[i];
                    idx /= base_sizes[i];
                }
                coords
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (i, &c)| acc * top_sizes[i] + parts[i].embed[c])
            })
            .collect();
        RingExtension::new(base, top, embed)
    }

    /// `R(+)M ⊆ S(+)M` for an `S`-module `M`, viewed over `R` by restriction.
    pub fn idealize(&self, module: &Module, builder: &RingBuilder) -> Result<RingExtension, RingError> {
        if module.ring() != &self.top {
            return Err(RingError::NotAModule("module is not over the top ring".into()));
        }
        let top = builder.idealization(module)?;
        let base = builder.idealization(&module.restrict_scalars(&self.base, &self.embed)?)?;
        let m = module.order();
        let embed = (0..base.order())
            .map(|i| self.embed[i / m] * m + i % m)
            .collect();
        RingExtension::new(base, top, embed)
    }
}
