//! Sieves: sub-presheaves of representables.
//!
//! A sieve on `X` stores, for each object `B`, the subspace of
//! `hom(B, X)` it contains. Subspaces are kept in canonical form, so two
//! sieves are equal exactly when their stored data is equal.

use std::collections::HashSet;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace};
use crate::lincat::{all_vectors, FinLinearCategory, Morphism, Obj};
use crate::presheaf::{Presheaf, PresheafMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sieve {
    pub apex: Obj,
    spans: Vec<Subspace>,
}

impl Sieve {
    pub fn maximal(c: &FinLinearCategory, x: Obj) -> Sieve {
        Sieve { apex: x, spans: c.objs().map(|b| Subspace::full(c.field(), c.hom_dim(b, x))).collect() }
    }

    pub fn zero(c: &FinLinearCategory, x: Obj) -> Sieve {
        Sieve { apex: x, spans: c.objs().map(|b| Subspace::zero(c.field(), c.hom_dim(b, x))).collect() }
    }

    /// Builds a sieve from spans, checking closure under precomposition.
    pub fn from_spans(c: &FinLinearCategory, x: Obj, spans: Vec<Subspace>) -> Result<Sieve> {
        if spans.len() != c.num_objects() {
            return Err(Error::Shape("one span per object is required".into()));
        }
        for (b, s) in spans.iter().enumerate() {
            if s.ambient() != c.hom_dim(b, x) || s.field() != c.field() {
                return Err(Error::Shape(format!("span at {} lives in the wrong space", c.label(b))));
            }
        }
        let r = Sieve { apex: x, spans };
        if let Some(w) = r.closure_failure(c) {
            return Err(Error::Validation(w));
        }
        Ok(r)
    }

    fn closure_failure(&self, c: &FinLinearCategory) -> Option<String> {
        for a in c.objs() {
            for b in c.objs() {
                for f in c.basis_morphisms(a, b) {
                    let moved = self.spans[b].image(&c.pre_matrix(&f, self.apex)).ok()?;
                    if !self.spans[a].contains(&moved).ok()? {
                        return Some(format!("not closed under precomposition with {}", c.basis_label(a, b, f.coords.iter().position(Scalar::is_one)?)));
                    }
                }
            }
        }
        None
    }

    pub fn span(&self, b: Obj) -> &Subspace {
        &self.spans[b]
    }

    pub fn spans(&self) -> &[Subspace] {
        &self.spans
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spans.iter().map(Subspace::dim).collect()
    }

    pub fn is_maximal(&self) -> bool {
        self.spans.iter().all(Subspace::is_full)
    }

    pub fn is_zero(&self) -> bool {
        self.spans.iter().all(Subspace::is_zero)
    }

    pub fn contains_morphism(&self, g: &Morphism) -> bool {
        g.tgt == self.apex && self.spans[g.src].contains_vec(&g.coords)
    }

    fn same_apex(&self, other: &Sieve) -> Result<()> {
        if self.apex != other.apex {
            return Err(Error::ApexMismatch(format!("{} vs {}", self.apex, other.apex)));
        }
        Ok(())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Sieve) -> Result<bool> {
        self.same_apex(other)?;
        for (a, b) in self.spans.iter().zip(&other.spans) {
            if !a.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Sieve) -> Result<Sieve> {
        self.same_apex(other)?;
        let spans = self.spans.iter().zip(&other.spans).map(|(a, b)| a.intersect(b)).collect::<Result<_>>()?;
        Ok(Sieve { apex: self.apex, spans })
    }

    /// Smallest sieve containing both.
    pub fn sum(&self, other: &Sieve) -> Result<Sieve> {
        self.same_apex(other)?;
        let spans = self.spans.iter().zip(&other.spans).map(|(a, b)| a.sum(b)).collect::<Result<_>>()?;
        Ok(Sieve { apex: self.apex, spans })
    }

    /// Every basis vector of every span, as morphisms into the apex.
    pub fn elements(&self, c: &FinLinearCategory) -> Vec<Morphism> {
        c.objs()
            .flat_map(|b| self.spans[b].basis_vectors().into_iter().map(move |v| Morphism { src: b, tgt: self.apex, coords: v }))
            .collect()
    }

    /// A small generating set, chosen greedily object by object.
    pub fn generators(&self, c: &FinLinearCategory) -> Vec<Morphism> {
        let mut gens: Vec<Morphism> = Vec::new();
        let mut current = Sieve::zero(c, self.apex);
        for g in self.elements(c) {
            if !current.contains_morphism(&g) {
                gens.push(g);
                current = generated_sieve(c, self.apex, &gens).expect("generators end at the apex");
            }
            if current == *self {
                break;
            }
        }
        gens
    }

    /// The sieve as a presheaf, with its inclusion into `hom(-, apex)`.
    pub fn as_presheaf(&self, c: &FinLinearCategory) -> (Presheaf, PresheafMap) {
        let x = self.apex;
        let dims = self.dims();
        let p = Presheaf::from_fn(c, dims, |f| {
            let moved = c.pre_matrix(f, x).mul(self.spans[f.tgt].basis())?;
            let cols: Vec<Vec<Scalar>> = moved
                .columns()
                .iter()
                .map(|v| self.spans[f.src].coords(v).expect("sieve is closed under precomposition"))
                .collect();
            Matrix::from_cols(c.field(), self.spans[f.src].dim(), &cols)
        })
        .expect("sieve presheaf is well-formed");
        let incl = PresheafMap { comps: self.spans.iter().map(|s| s.basis().clone()).collect() };
        (p, incl)
    }

    pub fn to_json(&self, c: &FinLinearCategory) -> Value {
        let mut m = Map::new();
        for b in c.objs() {
            let cols: Vec<Value> = self.spans[b]
                .basis_vectors()
                .iter()
                .map(|v| Value::Array(v.iter().map(Scalar::to_json).collect()))
                .collect();
            m.insert(c.label(b).into(), Value::Array(cols));
        }
        Value::Object(m)
    }

    /// Parses `{"B": [[coords], ...]}`; missing objects contribute nothing.
    /// The result is the sieve generated by the listed morphisms.
    pub fn from_json(c: &FinLinearCategory, x: Obj, v: &Value) -> Result<Sieve> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("sieve must be an object".into()))?;
        let mut gens = Vec::new();
        for (k, cols) in obj {
            let b = c.obj(k)?;
            for col in cols.as_array().ok_or_else(|| Error::Parse("sieve span must be a list of columns".into()))? {
                let coords = col
                    .as_array()
                    .ok_or_else(|| Error::Parse("column must be an array".into()))?
                    .iter()
                    .map(|s| c.field().parse_json(s))
                    .collect::<Result<Vec<_>>>()?;
                gens.push(c.morphism(b, x, coords)?);
            }
        }
        generated_sieve(c, x, &gens)
    }
}

/// `R(B) = Σ_α v_α ∘ hom(B, V_α)`.
pub fn generated_sieve(c: &FinLinearCategory, x: Obj, gens: &[Morphism]) -> Result<Sieve> {
    if let Some(g) = gens.iter().find(|g| g.tgt != x) {
        return Err(Error::TargetMismatch(format!("generator ends at {}, sieve lives on {}", c.label(g.tgt), c.label(x))));
    }
    let spans = c
        .objs()
        .map(|b| {
            let mut m = Matrix::zeros(c.field(), c.hom_dim(b, x), 0);
            for g in gens {
                m = m.hcat(&c.post_matrix(g, b))?;
            }
            Ok(Subspace::span(&m))
        })
        .collect::<Result<_>>()?;
    Ok(Sieve { apex: x, spans })
}

/// `f⁻¹R = {g : f ∘ g ∈ R}` for `f: B -> apex`.
pub fn pullback_sieve(c: &FinLinearCategory, r: &Sieve, f: &Morphism) -> Result<Sieve> {
    if f.tgt != r.apex {
        return Err(Error::TargetMismatch(format!("morphism ends at {}, sieve lives on {}", c.label(f.tgt), c.label(r.apex))));
    }
    let spans = c.objs().map(|d| r.spans[d].preimage(&c.post_matrix(f, d))).collect::<Result<_>>()?;
    Ok(Sieve { apex: f.src, spans })
}

/// Sieve operations with a single entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SieveOp {
    Intersection,
    Contains,
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SieveOpResult {
    Sieve(Sieve),
    Bool(bool),
}

pub fn sieve_op(r: &Sieve, s: &Sieve, op: SieveOp) -> Result<SieveOpResult> {
    Ok(match op {
        SieveOp::Intersection => SieveOpResult::Sieve(r.intersect(s)?),
        SieveOp::Contains => SieveOpResult::Bool(r.contains(s)?),
        SieveOp::Equal => {
            r.same_apex(s)?;
            SieveOpResult::Bool(r == s)
        }
    })
}

/// Every sieve on `x`, over a prime field.
///
/// Sieves are sums of cyclic sieves, so the list is the closure of the
/// cyclic sieves under sums, starting from the zero sieve.
pub fn enumerate_sieves(c: &FinLinearCategory, x: Obj, cap: usize) -> Result<Vec<Sieve>> {
    if c.field().order().is_none() {
        return Err(Error::Unsupported("sieve enumeration over Q".into()));
    }
    let mut cyclic: Vec<Sieve> = Vec::new();
    let mut seen: HashSet<Sieve> = HashSet::new();
    for b in c.objs() {
        for v in all_vectors(c.field(), c.hom_dim(b, x))? {
            if v.iter().all(Scalar::is_zero) {
                continue;
            }
            let s = generated_sieve(c, x, &[Morphism { src: b, tgt: x, coords: v }])?;
            if seen.insert(s.clone()) {
                cyclic.push(s);
            }
        }
    }
    let zero = Sieve::zero(c, x);
    let mut all = vec![zero.clone()];
    let mut seen: HashSet<Sieve> = [zero].into_iter().collect();
    let mut frontier = 0;
    while frontier < all.len() {
        let s = all[frontier].clone();
        frontier += 1;
        for cy in &cyclic {
            let t = s.sum(cy)?;
            if seen.insert(t.clone()) {
                if all.len() >= cap {
                    return Err(Error::TooLarge(format!("more than {cap} sieves on {}", c.label(x))));
                }
                all.push(t);
            }
        }
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::lincat::{a2_quiver, algebra_f2, f2xf2, graded_window, truncated_poly};

    #[test]
    fn sieve_counts() {
        assert_eq!(enumerate_sieves(&algebra_f2(), 0, 100).unwrap().len(), 2);
        assert_eq!(enumerate_sieves(&f2xf2(), 0, 100).unwrap().len(), 4);
        assert_eq!(enumerate_sieves(&truncated_poly(Field::F2, 2).unwrap(), 0, 100).unwrap().len(), 3);
        assert_eq!(enumerate_sieves(&truncated_poly(Field::F2, 3).unwrap(), 0, 100).unwrap().len(), 4);
    }

    #[test]
    fn rational_enumeration_is_unsupported() {
        let c = truncated_poly(Field::Q, 2).unwrap();
        assert!(matches!(enumerate_sieves(&c, 0, 100), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_sieves(&f2xf2(), 0, 2), Err(Error::TooLarge(_))));
    }

    #[test]
    fn generated_by_x_in_dual_numbers() {
        let c = truncated_poly(Field::F2, 2).unwrap();
        let x = c.basis_morphism(0, 0, 1);
        let r = generated_sieve(&c, 0, &[x.clone()]).unwrap();
        assert_eq!(r.dims(), vec![1]);
        // x⁻¹(x) = everything, 1⁻¹(x) = (x).
        assert!(pullback_sieve(&c, &r, &x).unwrap().is_maximal());
        assert_eq!(pullback_sieve(&c, &r, &c.identity(0)).unwrap(), r);
        let zero = Sieve::zero(&c, 0);
        assert_eq!(pullback_sieve(&c, &zero, &x).unwrap(), r);
    }

    #[test]
    fn target_and_apex_mismatch() {
        let c = a2_quiver(Field::F2);
        let (v1, v2) = (c.obj("v1").unwrap(), c.obj("v2").unwrap());
        let a = c.basis_morphism(v1, v2, 0);
        assert!(matches!(generated_sieve(&c, v1, &[a.clone()]), Err(Error::TargetMismatch(_))));
        let r = Sieve::maximal(&c, v1);
        assert!(matches!(pullback_sieve(&c, &r, &a), Err(Error::TargetMismatch(_))));
        assert!(matches!(r.intersect(&Sieve::maximal(&c, v2)), Err(Error::ApexMismatch(_))));
    }

    #[test]
    fn sieve_presheaf_embeds() {
        let c = graded_window(Field::Q, 1, -1, 2).unwrap();
        let x = c.obj("S<0>").unwrap();
        let gens: Vec<Morphism> = c.basis_morphisms(c.obj("S<1>").unwrap(), x);
        let r = generated_sieve(&c, x, &gens).unwrap();
        let (p, incl) = r.as_presheaf(&c);
        assert!(p.is_functor(&c));
        assert!(incl.is_natural(&c, &p, &Presheaf::representable(&c, x)));
        assert!(incl.is_mono());
        assert_eq!(r.span(c.obj("S<0>").unwrap()).dim(), 0);
        assert_eq!(r.span(c.obj("S<2>").unwrap()).dim(), 3);
    }

    #[test]
    fn json_round_trip() {
        let c = f2xf2();
        for s in enumerate_sieves(&c, 0, 100).unwrap() {
            assert_eq!(Sieve::from_json(&c, 0, &s.to_json(&c)).unwrap(), s);
        }
    }

    #[test]
    fn from_spans_checks_closure() {
        let c = a2_quiver(Field::F2);
        let (v1, v2) = (c.obj("v1").unwrap(), c.obj("v2").unwrap());
        let mut spans: Vec<Subspace> = Sieve::zero(&c, v2).spans().to_vec();
        spans[v2] = Subspace::full(c.field(), 1);
        assert!(Sieve::from_spans(&c, v2, spans.clone()).is_err());
        spans[v1] = Subspace::full(c.field(), 1);
        assert!(Sieve::from_spans(&c, v2, spans).unwrap().is_maximal());
    }
}
