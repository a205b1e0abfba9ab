use serde::{Deserialize, Serialize};

use super::{FiniteCommRing, Module, RingBuilder, RingError, RingExtension};

/// JSON recipe for a ring, tagged by `"construct"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construct", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Zmod {
        n: usize,
    },
    /// `poly` defaults to the least irreducible of degree `deg`.
    Gf {
        p: u32,
        deg: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poly: Option<Vec<u32>>,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    /// Monic modulus as base element indices, low degree first.
    PolyQuotient {
        base: Box<RingSpec>,
        coeffs: Vec<usize>,
    },
    Quotient {
        base: Box<RingSpec>,
        ideal_gens: Vec<usize>,
    },
    Idealization {
        base: Box<RingSpec>,
        module: ModuleSpec,
    },
    Table {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Free { rank: u32 },
    /// `R/I` for the ideal generated by `ideal_gens`.
    Cyclic { ideal_gens: Vec<usize> },
}

impl ModuleSpec {
    pub fn build(&self, ring: &FiniteCommRing) -> Result<Module, RingError> {
        match self {
            ModuleSpec::Free { rank } => Module::free(ring, *rank),
            ModuleSpec::Cyclic { ideal_gens } => Module::cyclic(ring, ideal_gens),
        }
    }
}

impl RingSpec {
    pub fn build(&self, builder: &RingBuilder) -> Result<FiniteCommRing, RingError> {
        match self {
            RingSpec::Zmod { n } => builder.zmod(*n),
            RingSpec::Gf { p, deg, poly: None } => builder.gf_default(*p, *deg),
            RingSpec::Gf { p, deg, poly: Some(f) } => {
                if f.len() != deg + 1 {
                    return Err(RingError::InvalidSpec(format!(
                        "modulus has {} coefficients, expected {}",
                        f.len(),
                        deg + 1
                    )));
                }
                builder.gf(*p, f)
            }
            RingSpec::Product { factors } => {
                let rings = factors
                    .iter()
                    .map(|f| f.build(builder))
                    .collect::<Result<Vec<_>, _>>()?;
                builder.product(&rings.iter().collect::<Vec<_>>())
            }
            RingSpec::PolyQuotient { base, coeffs } => builder.poly_quotient(&base.build(builder)?, coeffs),
            RingSpec::Quotient { base, ideal_gens } => builder.quotient(&base.build(builder)?, ideal_gens),
            RingSpec::Idealization { base, module } => {
                let r = base.build(builder)?;
                builder.idealization(&module.build(&r)?)
            }
            RingSpec::Table { add, mul, zero, one } => builder.from_tables(add, mul, *zero, *one),
        }
    }
}

/// `R ⊆ S` with `R` generated inside `S` by the listed element indices;
/// an empty list gives the prime subring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub top: RingSpec,
    #[serde(default)]
    pub base_generators: Vec<usize>,
}

impl ExtensionSpec {
    pub fn build(&self, builder: &RingBuilder) -> Result<RingExtension, RingError> {
        let top = self.top.build(builder)?;
        RingExtension::generated(&top, &self.base_generators)
    }
}
