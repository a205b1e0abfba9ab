use super::{ElementSet, FiniteCommRing, RingError, MAX_RING_ORDER};

/// A finite module over a [`FiniteCommRing`], given by its addition table
/// and the scalar action table.
#[derive(Debug, Clone)]
pub struct Module {
    ring: FiniteCommRing,
    order: usize,
    add: Vec<u16>,
    // action[r * order + m] = r·m
    action: Vec<u16>,
    zero: usize,
    names: Vec<String>,
    description: String,
}

impl Module {
    pub fn from_tables(
        ring: &FiniteCommRing,
        add: Vec<u16>,
        action: Vec<u16>,
        zero: usize,
        names: Vec<String>,
        description: impl Into<String>,
    ) -> Result<Self, RingError> {
        let order = names.len();
        if order == 0 || add.len() != order * order || action.len() != ring.order() * order || zero >= order {
            return Err(RingError::NotAModule("table dimensions do not match".into()));
        }
        let module = Module {
            ring: ring.clone(),
            order,
            add,
            action,
            zero,
            names,
            description: description.into(),
        };
        module.verify()?;
        Ok(module)
    }

    pub fn zero(ring: &FiniteCommRing) -> Module {
        Module::from_tables(ring, vec![0], vec![0; ring.order()], 0, vec!["0".into()], "0")
            .expect("the zero module")
    }

    /// `R^rank`, tuples indexed with the first coordinate most significant.
    pub fn free(ring: &FiniteCommRing, rank: u32) -> Result<Module, RingError> {
        let r = ring.order();
        let order = r.checked_pow(rank).filter(|&o| o <= MAX_RING_ORDER).ok_or_else(|| {
            RingError::TooLarge {
                order: (r as u128).saturating_pow(rank),
                cap: MAX_RING_ORDER,
            }
        })?;
        let k = rank as usize;
        let decode = |mut idx: usize| {
            let mut v = vec![0; k];
            for slot in v.iter_mut().rev() {
                *slot = idx % r;
                idx /= r;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().fold(0, |acc, &c| acc * r + c);
        let elems: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let mut add = Vec::with_capacity(order * order);
        for x in &elems {
            for y in &elems {
                let s: Vec<usize> = x.iter().zip(y).map(|(&a, &b)| ring.add(a, b)).collect();
                add.push(encode(&s) as u16);
            }
        }
        let mut action = Vec::with_capacity(ring.order() * order);
        for s in 0..ring.order() {
            for x in &elems {
                let v: Vec<usize> = x.iter().map(|&a| ring.mul(s, a)).collect();
                action.push(encode(&v) as u16);
            }
        }
        let names = elems
            .iter()
            .map(|v| {
                let parts: Vec<&str> = v.iter().map(|&a| ring.name(a)).collect();
                if k == 1 {
                    parts[0].to_string()
                } else {
                    format!("[{}]", parts.join(","))
                }
            })
            .collect();
        let zero = encode(&vec![ring.zero(); k]);
        Module::from_tables(ring, add, action, zero, names, format!("{}^{rank}", ring.recipe()))
    }

    /// The cyclic module `R/I` for the ideal generated by `gens`.
    pub fn cyclic(ring: &FiniteCommRing, gens: &[usize]) -> Result<Module, RingError> {
        if gens.iter().any(|&g| g >= ring.order()) {
            return Err(RingError::InvalidSpec("ideal generator out of range".into()));
        }
        let ideal = ring.ideal_generated(&ring.full_set(), gens.iter().copied());
        if ideal.contains(ring.one()) {
            return Ok(Module::zero(ring));
        }
        let (q, proj) = ring.quotient_by(&ideal)?;
        let n = q.order();
        let add = q.add_table().to_vec();
        let mut action = Vec::with_capacity(ring.order() * n);
        for r in 0..ring.order() {
            for m in 0..n {
                action.push(q.mul(proj[r], m) as u16);
            }
        }
        let gen_names: Vec<&str> = gens.iter().map(|&g| ring.name(g)).collect();
        Module::from_tables(
            ring,
            add,
            action,
            q.zero(),
            q.names().to_vec(),
            format!("{}/({})", ring.recipe(), gen_names.join(",")),
        )
    }

    /// The same abelian group viewed over a subring through `embed`
    /// (sub element index to ring element index).
    pub fn restrict_scalars(&self, sub: &FiniteCommRing, embed: &[usize]) -> Result<Module, RingError> {
        let mut action = Vec::with_capacity(sub.order() * self.order);
        for &r in embed {
            for m in 0..self.order {
                action.push(self.act(r, m) as u16);
            }
        }
        Module::from_tables(
            sub,
            self.add.clone(),
            action,
            self.zero,
            self.names.clone(),
            self.description.clone(),
        )
    }

    /// Abelian group axioms and the four action identities on all inputs.
    pub fn verify(&self) -> Result<(), RingError> {
        let n = self.order;
        let r = &self.ring;
        let fail = |msg: &str| Err(RingError::NotAModule(msg.to_string()));
        if self.add.iter().chain(&self.action).any(|&v| v as usize >= n) {
            return fail("table entry out of range");
        }
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return fail("zero is not an additive identity");
            }
            if !(0..n).any(|b| self.add(a, b) == self.zero) {
                return fail("missing additive inverse");
            }
            if self.act(r.one(), a) != a {
                return fail("1·m != m");
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("addition is not commutative");
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("addition is not associative");
                    }
                }
            }
        }
        for s in 0..r.order() {
            for t in 0..r.order() {
                for m in 0..n {
                    if self.act(r.mul(s, t), m) != self.act(s, self.act(t, m)) {
                        return fail("(st)m != s(tm)");
                    }
                    if self.act(r.add(s, t), m) != self.add(self.act(s, m), self.act(t, m)) {
                        return fail("(s+t)m != sm + tm");
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if self.act(s, self.add(a, b)) != self.add(self.act(s, a), self.act(s, b)) {
                        return fail("s(m+n) != sm + sn");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &FiniteCommRing {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero_element(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.action[r * self.order + m] as usize
    }

    pub fn name(&self, m: usize) -> &str {
        &self.names[m]
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Annihilator `{r : r M = 0}` as a subset of the ring.
    pub fn annihilator(&self) -> ElementSet {
        self.ring
            .set_of((0..self.ring.order()).filter(|&r| (0..self.order).all(|m| self.act(r, m) == self.zero)))
    }
}
