use crate::error::Result;
use crate::field::{build_setup, Field, FieldSetup, PrimePower};
use crate::orbits::{build_orbits, OrbitTable};
use crate::psl2::{CanonicalGenerators, GroupElement, Psl2};

/// Everything fixed by a pair `(q, p)`: the group, its distinguished
/// elements and the orbit decomposition. Immutable once built.
#[derive(Debug, Clone)]
pub struct Instance {
    pub psl: Psl2,
    pub setup: FieldSetup,
    pub gens: CanonicalGenerators,
    pub tab: OrbitTable,
}

impl Instance {
    pub fn new(q: u64, p: u64) -> Result<Self> {
        let field = Field::new(PrimePower::from_order(q)?)?;
        let setup = build_setup(&field);
        let psl = Psl2::new(field);
        let gens = CanonicalGenerators::new(&psl, &setup, p)?;
        let tab = build_orbits(&psl, &gens);
        Ok(Instance { psl, setup, gens, tab })
    }

    pub fn q(&self) -> u64 {
        self.psl.q()
    }

    pub fn p(&self) -> u64 {
        self.gens.p
    }

    pub fn is_odd(&self) -> bool {
        self.psl.q() % 2 == 1
    }

    /// `h ∈ D_G(g)`.
    pub fn in_d(&self, h: &GroupElement) -> bool {
        self.psl.in_dihedralizer(h, &self.gens.g)
    }
}
