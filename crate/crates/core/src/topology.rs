//! Grothendieck topologies on finite linear categories.
//!
//! On a category with finitely many objects and finite-dimensional homs
//! every topology has a smallest covering sieve on each object, and the
//! covering sieves are exactly the sieves containing it. A topology is
//! stored as that family of minimal sieves.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::lincat::{FinLinearCategory, Morphism, Obj};
use crate::sieve::{enumerate_sieves, generated_sieve, pullback_sieve, Sieve};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Topology {
    min_sieves: Vec<Sieve>,
}

/// Failure of stability: `f⁻¹ M(A)` does not contain `M(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityWitness {
    pub morphism: Morphism,
}

/// Failure of local character: `sieve` is locally covering but does not cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityWitness {
    pub object: Obj,
    pub sieve: Sieve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub stability: Option<StabilityWitness>,
    pub locality: Option<LocalityWitness>,
    /// False when local character was only tested on a candidate list.
    pub exhaustive: bool,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.stability.is_none() && self.locality.is_none()
    }
}

impl Topology {
    /// Wraps a family of minimal sieves without checking the axioms.
    pub fn from_min_sieves(c: &FinLinearCategory, min_sieves: Vec<Sieve>) -> Result<Topology> {
        if min_sieves.len() != c.num_objects() || min_sieves.iter().enumerate().any(|(x, s)| s.apex != x) {
            return Err(Error::ApexMismatch("minimal sieves must be listed object by object".into()));
        }
        Ok(Topology { min_sieves })
    }

    /// Only maximal sieves cover.
    pub fn coarsest(c: &FinLinearCategory) -> Topology {
        Topology { min_sieves: c.objs().map(|x| Sieve::maximal(c, x)).collect() }
    }

    /// Every sieve covers.
    pub fn finest(c: &FinLinearCategory) -> Topology {
        Topology { min_sieves: c.objs().map(|x| Sieve::zero(c, x)).collect() }
    }

    pub fn min_sieve(&self, x: Obj) -> &Sieve {
        &self.min_sieves[x]
    }

    pub fn min_sieves(&self) -> &[Sieve] {
        &self.min_sieves
    }

    pub fn covers(&self, r: &Sieve) -> bool {
        r.contains(&self.min_sieves[r.apex]).expect("same apex")
    }

    /// `self ⊆ other` as sets of covering sieves.
    pub fn is_coarser_than(&self, other: &Topology) -> bool {
        self.min_sieves.iter().zip(&other.min_sieves).all(|(a, b)| a.contains(b).expect("same apex"))
    }

    pub fn to_json(&self, c: &FinLinearCategory) -> Value {
        let mut m = Map::new();
        for (x, s) in self.min_sieves.iter().enumerate() {
            m.insert(c.label(x).into(), s.to_json(c));
        }
        serde_json::json!({ "minSieve": m })
    }

    /// Parses `{"minSieve": {...}}`; objects left out get the maximal sieve.
    pub fn from_json(c: &FinLinearCategory, v: &Value) -> Result<Topology> {
        let m = v.get("minSieve").and_then(Value::as_object).ok_or_else(|| Error::Parse("missing minSieve".into()))?;
        let mut min_sieves: Vec<Sieve> = c.objs().map(|x| Sieve::maximal(c, x)).collect();
        for (k, s) in m {
            let x = c.obj(k)?;
            min_sieves[x] = Sieve::from_json(c, x, s)?;
        }
        Ok(Topology { min_sieves })
    }
}

/// Checks stability exhaustively and local character on all sieves
/// (prime fields) or on the given candidates plus cyclic sieves (over Q).
pub fn axiom_check(c: &FinLinearCategory, t: &Topology, candidates: &[Sieve], max_sieves: usize) -> Result<AxiomReport> {
    let stability = stability_failure(c, t)?;
    let mut exhaustive = true;
    let mut locality = None;
    'objects: for a in c.objs() {
        let sieves = match enumerate_sieves(c, a, max_sieves) {
            Ok(s) => s,
            Err(Error::Unsupported(_)) | Err(Error::TooLarge(_)) => {
                exhaustive = false;
                candidate_sieves(c, t, a, candidates)?
            }
            Err(e) => return Err(e),
        };
        for s in sieves {
            if locally_covers(c, t, &s)? && !t.covers(&s) {
                locality = Some(LocalityWitness { object: a, sieve: s });
                break 'objects;
            }
        }
    }
    Ok(AxiomReport { stability, locality, exhaustive })
}

fn stability_failure(c: &FinLinearCategory, t: &Topology) -> Result<Option<StabilityWitness>> {
    for b in c.objs() {
        for a in c.objs() {
            for f in c.basis_morphisms(b, a) {
                if !pullback_sieve(c, t.min_sieve(a), &f)?.contains(t.min_sieve(b))? {
                    return Ok(Some(StabilityWitness { morphism: f }));
                }
            }
        }
    }
    Ok(None)
}

/// `f⁻¹S` covers for every `f` in the minimal sieve on the apex of `S`.
pub fn locally_covers(c: &FinLinearCategory, t: &Topology, s: &Sieve) -> Result<bool> {
    for f in t.min_sieve(s.apex).elements(c) {
        if !t.covers(&pullback_sieve(c, s, &f)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn candidate_sieves(c: &FinLinearCategory, t: &Topology, a: Obj, extra: &[Sieve]) -> Result<Vec<Sieve>> {
    let mut out: Vec<Sieve> = extra.iter().filter(|s| s.apex == a).cloned().collect();
    out.push(Sieve::zero(c, a));
    for b in c.objs() {
        for f in c.basis_morphisms(b, a) {
            let s = generated_sieve(c, a, &[f])?;
            out.push(s.intersect(t.min_sieve(a))?);
            out.push(s);
        }
    }
    Ok(out)
}

/// `Σ_B Σ_{f ∈ M(A)(B)} f ∘ M(B)`: the composite of the minimal covers.
pub fn composite_sieve(c: &FinLinearCategory, mins: &[Sieve], a: Obj) -> Result<Sieve> {
    let mut gens = Vec::new();
    for f in mins[a].elements(c) {
        for g in mins[f.src].elements(c) {
            gens.push(c.compose(&f, &g)?);
        }
    }
    generated_sieve(c, a, &gens)
}

/// Smallest topology in which every seed sieve covers.
///
/// Starts from the intersection of the seeds on each object and shrinks by
/// pullback and by composite covers until nothing changes. Every step is
/// forced by the axioms, so the fixed point is the least such topology.
pub fn generated_topology(c: &FinLinearCategory, seeds: &[Sieve]) -> Result<Topology> {
    let mut mins: Vec<Sieve> = c.objs().map(|x| Sieve::maximal(c, x)).collect();
    for s in seeds {
        mins[s.apex] = mins[s.apex].intersect(s)?;
    }
    loop {
        let mut changed = false;
        for b in c.objs() {
            for a in c.objs() {
                for f in c.basis_morphisms(b, a) {
                    let pb = pullback_sieve(c, &mins[a], &f)?;
                    let next = mins[b].intersect(&pb)?;
                    if next != mins[b] {
                        mins[b] = next;
                        changed = true;
                    }
                }
            }
        }
        for a in c.objs() {
            let next = composite_sieve(c, &mins, a)?.intersect(&mins[a])?;
            if next != mins[a] {
                mins[a] = next;
                changed = true;
            }
        }
        if !changed {
            return Ok(Topology { min_sieves: mins });
        }
    }
}

/// Join (least upper bound) and meet of a family of topologies.
///
/// The meet covers by sieves containing every minimal sieve; the join is the
/// topology generated by all minimal sieves together.
pub fn join_meet(c: &FinLinearCategory, ts: &[Topology]) -> Result<(Topology, Topology)> {
    let seeds: Vec<Sieve> = ts.iter().flat_map(|t| t.min_sieves.iter().cloned()).collect();
    let join = generated_topology(c, &seeds)?;
    let mut meet: Vec<Sieve> = c.objs().map(|x| Sieve::zero(c, x)).collect();
    for t in ts {
        for x in c.objs() {
            meet[x] = meet[x].sum(t.min_sieve(x))?;
        }
    }
    Ok((join, Topology { min_sieves: meet }))
}

/// Every topology, over a prime field.
pub fn enumerate_topologies(c: &FinLinearCategory, max_sieves: usize) -> Result<Vec<Topology>> {
    let per_object: Vec<Vec<Sieve>> = c.objs().map(|x| enumerate_sieves(c, x, max_sieves)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut chosen: Vec<Sieve> = Vec::new();
    search(c, &per_object, &mut chosen, &mut out, max_sieves)?;
    Ok(out)
}

fn search(c: &FinLinearCategory, per: &[Vec<Sieve>], chosen: &mut Vec<Sieve>, out: &mut Vec<Topology>, cap: usize) -> Result<()> {
    let k = chosen.len();
    if k == per.len() {
        let t = Topology { min_sieves: chosen.clone() };
        if axiom_check(c, &t, &[], cap)?.ok() {
            out.push(t);
        }
        return Ok(());
    }
    'candidates: for s in &per[k] {
        // Stability between the new object and those already chosen.
        for (b, mb) in chosen.iter().chain(std::iter::once(s)).enumerate() {
            for (a, ma) in chosen.iter().chain(std::iter::once(s)).enumerate() {
                if a != k && b != k {
                    continue;
                }
                for f in c.basis_morphisms(b, a) {
                    if !pullback_sieve(c, ma, &f)?.contains(mb)? {
                        continue 'candidates;
                    }
                }
            }
        }
        chosen.push(s.clone());
        search(c, per, chosen, out, cap)?;
        chosen.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::lincat::{a2_quiver, algebra_f2, f2xf2, truncated_poly};

    #[test]
    fn counts_on_small_algebras() {
        assert_eq!(enumerate_topologies(&algebra_f2(), 100).unwrap().len(), 2);
        assert_eq!(enumerate_topologies(&f2xf2(), 100).unwrap().len(), 4);
        assert_eq!(enumerate_topologies(&truncated_poly(Field::F2, 2).unwrap(), 100).unwrap().len(), 2);
    }

    #[test]
    fn trivial_topologies_pass() {
        for c in [f2xf2(), a2_quiver(Field::F2), truncated_poly(Field::Q, 2).unwrap()] {
            assert!(axiom_check(&c, &Topology::coarsest(&c), &[], 1000).unwrap().ok());
            assert!(axiom_check(&c, &Topology::finest(&c), &[], 1000).unwrap().ok());
        }
    }

    #[test]
    fn corrupted_family_has_stability_witness() {
        let c = a2_quiver(Field::F2);
        let (v1, v2) = (c.obj("v1").unwrap(), c.obj("v2").unwrap());
        let t = Topology::from_min_sieves(&c, vec![Sieve::maximal(&c, v1), Sieve::zero(&c, v2)]).unwrap();
        let report = axiom_check(&c, &t, &[], 100).unwrap();
        let w = report.stability.expect("stability fails");
        assert_eq!((w.morphism.src, w.morphism.tgt), (v1, v2));
    }

    #[test]
    fn ideal_x_is_not_a_topology() {
        let c = truncated_poly(Field::F2, 2).unwrap();
        let x = c.basis_morphism(0, 0, 1);
        let t = Topology::from_min_sieves(&c, vec![generated_sieve(&c, 0, &[x]).unwrap()]).unwrap();
        let report = axiom_check(&c, &t, &[], 100).unwrap();
        assert!(report.stability.is_none());
        assert!(report.locality.unwrap().sieve.is_zero());
    }

    #[test]
    fn nilpotent_seed_generates_finest() {
        let c = truncated_poly(Field::F2, 3).unwrap();
        let x = c.basis_morphism(0, 0, 1);
        let t = generated_topology(&c, &[generated_sieve(&c, 0, &[x]).unwrap()]).unwrap();
        assert_eq!(t, Topology::finest(&c));
    }

    #[test]
    fn join_and_meet_of_idempotent_topologies() {
        let c = f2xf2();
        let e = |i| generated_sieve(&c, 0, &[c.basis_morphism(0, 0, i)]).unwrap();
        let t1 = Topology::from_min_sieves(&c, vec![e(0)]).unwrap();
        let t2 = Topology::from_min_sieves(&c, vec![e(1)]).unwrap();
        let (join, meet) = join_meet(&c, &[t1, t2]).unwrap();
        assert_eq!(join, Topology::finest(&c));
        assert_eq!(meet, Topology::coarsest(&c));
    }

    #[test]
    fn json_round_trip() {
        let c = a2_quiver(Field::F2);
        for t in enumerate_topologies(&c, 100).unwrap() {
            assert_eq!(Topology::from_json(&c, &t.to_json(&c)).unwrap(), t);
        }
    }
}
