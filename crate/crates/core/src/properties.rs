//! Subcanonical, bounded-generation and canonical-topology computations.

use serde_json::{json, Value};

use crate::error::Result;
use crate::exactla::{Matrix, Subspace};
use crate::lincat::{all_vectors, FinLinearCategory, FormalSequence, Obj};
use crate::presheaf::Presheaf;
use crate::pretop::{generating_sequence, pre_two};
use crate::sheafify::{is_sheaf, kernel_of_z};
use crate::topology::{enumerate_topologies, join_meet, Topology};

const CANDIDATE_CAP: usize = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcanonicalReport {
    pub subcanonical: bool,
    /// First object whose representable is not a sheaf.
    pub witness: Option<Obj>,
    /// The generating sequences of `pre′(T)` are all right exact.
    pub sampled_right_exact: bool,
}

/// `hom(X, A) -> ⊕ hom(Y_β, A) -> ⊕ hom(Z_γ, A)` is exact with injective first map, for every `A`.
pub fn is_right_exact(c: &FinLinearCategory, seq: &FormalSequence) -> Result<bool> {
    let (q, p) = (seq.q_formal(c)?, seq.p_formal()?);
    for a in c.objs() {
        let first = q.pre_matrix(c, a);
        let second = p.pre_matrix(c, a);
        if !first.is_injective() || Subspace::span(&first) != Subspace::span(&second.kernel()) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn subcanonical_check(c: &FinLinearCategory, t: &Topology) -> Result<SubcanonicalReport> {
    let mut witness = None;
    for x in c.objs() {
        if !is_sheaf(c, t, &Presheaf::representable(c, x))? {
            witness = Some(x);
            break;
        }
    }
    let mut sampled_right_exact = true;
    for x in c.objs() {
        sampled_right_exact &= is_right_exact(c, &generating_sequence(c, t, x)?)?;
    }
    Ok(SubcanonicalReport { subcanonical: witness.is_none(), witness, sampled_right_exact })
}

/// `Z` is faithful: no nonzero morphism dies in sheaves.
pub fn z_is_faithful(c: &FinLinearCategory, t: &Topology) -> Result<bool> {
    for x in c.objs() {
        for y in c.objs() {
            if !kernel_of_z(c, t, x, y)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// 2-bounded sequences `Z -> Y -> X` built from single morphisms, with `p`
/// running over a basis of the pointwise kernel of `q` (or absent).
pub fn two_bounded_candidates(c: &FinLinearCategory) -> Result<Vec<FormalSequence>> {
    let mut out = Vec::new();
    for x in c.objs() {
        for y in c.objs() {
            let n = c.hom_dim(y, x);
            let qs: Vec<Vec<_>> = match c.field().order() {
                Some(q) if (q as f64).powi(n as i32) <= CANDIDATE_CAP as f64 => all_vectors(c.field(), n)?,
                _ => c.basis_morphisms(y, x).into_iter().map(|m| m.coords).collect(),
            };
            for coords in qs {
                let q = c.morphism(y, x, coords)?;
                if q.is_zero() {
                    continue;
                }
                out.push(FormalSequence::new(c, vec![q.clone()], x, vec![], vec![])?);
                for z in c.objs() {
                    let kernel: Matrix = c.post_matrix(&q, z).kernel();
                    for k in kernel.columns() {
                        let p = c.morphism(z, y, k)?;
                        out.push(FormalSequence::new(c, vec![q.clone()], x, vec![vec![p]], vec![z])?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `T` is generated by 2-bounded members of `pre(T)`.
pub fn bounded_generation(c: &FinLinearCategory, t: &Topology) -> Result<bool> {
    Ok(pre_two(c, t, &two_bounded_candidates(c)?)?.generates)
}

#[derive(Clone, Debug)]
pub struct CanonicalReport {
    pub canonical: Topology,
    pub canonical_bounded: Topology,
    pub subcanonical_count: usize,
    pub lattice_size: usize,
    /// The join of the subcanonical members is again subcanonical.
    pub join_subcanonical: bool,
}

/// Joins of the subcanonical topologies, all of them and the boundedly generated ones.
pub fn canonical_topologies(c: &FinLinearCategory, max_sieves: usize) -> Result<CanonicalReport> {
    let all = enumerate_topologies(c, max_sieves)?;
    let mut sub = Vec::new();
    let mut bounded = Vec::new();
    for t in &all {
        if subcanonical_check(c, t)?.subcanonical {
            if bounded_generation(c, t)? {
                bounded.push(t.clone());
            }
            sub.push(t.clone());
        }
    }
    let canonical = if sub.is_empty() { Topology::coarsest(c) } else { join_meet(c, &sub)?.0 };
    let canonical_bounded = if bounded.is_empty() { Topology::coarsest(c) } else { join_meet(c, &bounded)?.0 };
    let join_subcanonical = subcanonical_check(c, &canonical)?.subcanonical;
    Ok(CanonicalReport { canonical, canonical_bounded, subcanonical_count: sub.len(), lattice_size: all.len(), join_subcanonical })
}

#[derive(Clone, Debug)]
pub struct TopologyReport {
    pub subcanonical: SubcanonicalReport,
    pub bounded_generation: bool,
    pub monoidal: Option<bool>,
    pub canonical_rank: Option<usize>,
}

pub fn topology_report(c: &FinLinearCategory, t: &Topology, max_sieves: usize) -> Result<TopologyReport> {
    let subcanonical = subcanonical_check(c, t)?;
    let bounded_generation = bounded_generation(c, t)?;
    let monoidal = match c.monoidal() {
        Some(_) => Some(crate::monoidal::monoidal_check(c, t)?.monoidal),
        None => None,
    };
    let canonical_rank = enumerate_topologies(c, max_sieves).ok().and_then(|all| all.iter().position(|s| s == t));
    Ok(TopologyReport { subcanonical, bounded_generation, monoidal, canonical_rank })
}

impl TopologyReport {
    pub fn to_json(&self, c: &FinLinearCategory) -> Value {
        json!({
            "subcanonical": self.subcanonical.subcanonical,
            "witness": self.subcanonical.witness.map(|x| c.label(x).to_string()),
            "sampledRightExact": self.subcanonical.sampled_right_exact,
            "boundedGeneration": self.bounded_generation,
            "monoidal": self.monoidal,
            "canonicalRank": self.canonical_rank,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{a2_modules, bundled, f2, f2xf2_instance};
    use crate::sieve::generated_sieve;

    #[test]
    fn trivial_topologies() {
        for inst in bundled() {
            let c = &inst.category;
            assert!(subcanonical_check(c, &Topology::coarsest(c)).unwrap().subcanonical);
            let fin = subcanonical_check(c, &Topology::finest(c)).unwrap();
            assert!(!fin.subcanonical);
            assert_eq!(fin.witness, Some(0));
        }
    }

    #[test]
    fn e1_topology_is_not_subcanonical() {
        let k = f2xf2_instance();
        let c = &k.category;
        let t = Topology::from_min_sieves(c, vec![generated_sieve(c, 0, &[c.basis_morphism(0, 0, 0)]).unwrap()]).unwrap();
        let r = subcanonical_check(c, &t).unwrap();
        assert!(!r.subcanonical);
        assert!(!z_is_faithful(c, &t).unwrap());
    }

    #[test]
    fn subcanonical_agrees_with_faithfulness() {
        for inst in bundled() {
            let c = &inst.category;
            for t in enumerate_topologies(c, 1 << 12).unwrap() {
                let r = subcanonical_check(c, &t).unwrap();
                if r.subcanonical {
                    assert!(z_is_faithful(c, &t).unwrap());
                    assert!(r.sampled_right_exact);
                }
            }
        }
    }

    #[test]
    fn canonical_of_fields() {
        for inst in [f2(), f2xf2_instance()] {
            let c = &inst.category;
            let r = canonical_topologies(c, 1 << 12).unwrap();
            assert_eq!(r.canonical, Topology::coarsest(c));
            assert!(r.join_subcanonical);
        }
    }

    #[test]
    fn canonical_on_module_category_is_proper() {
        let k = a2_modules();
        let c = &k.category;
        let r = canonical_topologies(c, 1 << 12).unwrap();
        assert!(r.join_subcanonical);
        assert_ne!(r.canonical_bounded, Topology::coarsest(c));
        assert!(r.subcanonical_count >= 2);
    }
}
