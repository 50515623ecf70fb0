//! Sheafification through the minimal covering sieves.
//!
//! With a smallest covering sieve `M(X)` on every object, the colimit over
//! covering sieves collapses to a single term: `ΣF(X) = Nat(M(X), F)`.
//! Applying `Σ` twice gives the associated sheaf.

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace};
use crate::lincat::{FinLinearCategory, FormalMorphism, FormalSequence, Obj};
use crate::presheaf::{nat_space, NatSpace, Presheaf, PresheafMap};
use crate::topology::Topology;

/// `ΣF` together with `σ: F -> ΣF` and the spaces it was computed from.
#[derive(Clone, Debug)]
pub struct Sigma {
    pub presheaf: Presheaf,
    pub unit: PresheafMap,
    nat: Vec<NatSpace>,
}

/// Matrix `M_Y(C) -> M_X(C)` of `f ∘ -` in sieve coordinates, for `f: Y -> X`.
fn restriction_matrix(c: &FinLinearCategory, t: &Topology, f_x: Obj, f: &crate::lincat::Morphism, d: Obj) -> Result<Matrix> {
    let (my, mx) = (t.min_sieve(f.src).span(d), t.min_sieve(f_x).span(d));
    let moved = c.post_matrix(f, d).mul(my.basis())?;
    let cols = moved
        .columns()
        .iter()
        .map(|v| mx.coords(v).ok_or_else(|| Error::Validation("family is not stable under pullback".into())))
        .collect::<Result<Vec<Vec<Scalar>>>>()?;
    Matrix::from_cols(c.field(), mx.dim(), &cols)
}

pub fn sigma(c: &FinLinearCategory, t: &Topology, f: &Presheaf) -> Result<Sigma> {
    let field = c.field();
    let nat: Vec<NatSpace> = c.objs().map(|x| nat_space(c, &t.min_sieve(x).as_presheaf(c).0, f)).collect();
    let dims: Vec<usize> = nat.iter().map(NatSpace::dim).collect();
    let presheaf = Presheaf::from_fn(c, dims, |m| {
        let (y, x) = (m.src, m.tgt);
        let res: Vec<Matrix> = c.objs().map(|d| restriction_matrix(c, t, x, m, d)).collect::<Result<_>>()?;
        let cols = nat[x]
            .basis()
            .iter()
            .map(|eta| {
                let theta = PresheafMap { comps: eta.comps.iter().zip(&res).map(|(e, r)| e.mul(r)).collect::<Result<_>>()? };
                nat[y].coords(&theta).ok_or_else(|| Error::Validation("restricted family is not natural".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_cols(field, nat[y].dim(), &cols)
    })?;
    let unit = PresheafMap {
        comps: c
            .objs()
            .map(|x| {
                let gens: Vec<Vec<crate::exactla::Scalar>> = (0..f.dim(x))
                    .map(|k| {
                        let comps = c
                            .objs()
                            .map(|d| {
                                let span = t.min_sieve(x).span(d);
                                let cols: Vec<Vec<Scalar>> = span
                                    .basis_vectors()
                                    .into_iter()
                                    .map(|g| f.act(&crate::lincat::Morphism { src: d, tgt: x, coords: g }).col(k))
                                    .collect();
                                Matrix::from_cols(field, f.dim(d), &cols)
                            })
                            .collect::<Result<_>>()?;
                        nat[x].coords(&PresheafMap { comps }).ok_or_else(|| Error::Validation("restriction family is not natural".into()))
                    })
                    .collect::<Result<_>>()?;
                Matrix::from_cols(field, nat[x].dim(), &gens)
            })
            .collect::<Result<_>>()?,
    };
    Ok(Sigma { presheaf, unit, nat })
}

/// `Σφ: ΣF -> ΣG`, given `Σ` of both ends.
pub fn sigma_map(c: &FinLinearCategory, sf: &Sigma, sg: &Sigma, phi: &PresheafMap) -> Result<PresheafMap> {
    let comps = c
        .objs()
        .map(|x| {
            let cols = sf.nat[x]
                .basis()
                .iter()
                .map(|eta| {
                    let moved = PresheafMap { comps: phi.comps.iter().zip(&eta.comps).map(|(p, e)| p.mul(e)).collect::<Result<_>>()? };
                    sg.nat[x].coords(&moved).ok_or_else(|| Error::Validation("composite is not natural".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_cols(c.field(), sg.nat[x].dim(), &cols)
        })
        .collect::<Result<_>>()?;
    Ok(PresheafMap { comps })
}

/// The associated sheaf `ΣΣF` with its unit `(Σσ) ∘ σ`.
#[derive(Clone, Debug)]
pub struct Sheafification {
    pub sheaf: Presheaf,
    pub unit: PresheafMap,
    pub first: Sigma,
    pub second: Sigma,
}

pub fn sheafify(c: &FinLinearCategory, t: &Topology, f: &Presheaf) -> Result<Sheafification> {
    let first = sigma(c, t, f)?;
    let second = sigma(c, t, &first.presheaf)?;
    // Σ(σ_F) needs Σ of the source F and of the target ΣF.
    let sigma_sigma = sigma_map(c, &first, &second, &first.unit)?;
    let unit = sigma_sigma.compose(&first.unit)?;
    Ok(Sheafification { sheaf: second.presheaf.clone(), unit, first, second })
}

/// `F(X) -> Nat(M(X), F)` is injective everywhere.
pub fn is_separated(c: &FinLinearCategory, t: &Topology, f: &Presheaf) -> Result<bool> {
    Ok(sigma(c, t, f)?.unit.is_mono())
}

/// `F(X) -> Nat(M(X), F)` is bijective everywhere.
pub fn is_sheaf(c: &FinLinearCategory, t: &Topology, f: &Presheaf) -> Result<bool> {
    Ok(sigma(c, t, f)?.unit.is_iso())
}

/// Morphisms `X -> X'` killed by every element of the minimal sieve on `X`.
pub fn kernel_of_z(c: &FinLinearCategory, t: &Topology, x: Obj, x2: Obj) -> Result<Subspace> {
    let mut stack = Matrix::zeros(c.field(), 0, c.hom_dim(x, x2));
    for g in t.min_sieve(x).elements(c) {
        stack = stack.vcat(&c.pre_matrix(&g, x2))?;
    }
    Ok(Subspace::span(&stack.kernel()))
}

/// Same kernel, read off the unit of `hom(-, X')` at `X`.
pub fn kernel_of_z_via_unit(c: &FinLinearCategory, t: &Topology, x: Obj, x2: Obj) -> Result<Subspace> {
    let sh = sheafify(c, t, &Presheaf::representable(c, x2))?;
    Ok(Subspace::span(&sh.unit.comps[x].kernel()))
}

/// One stage of the colimit formula for sheaf homs.
///
/// `refine` maps this stage's middle term to the previous one, so that the
/// previous cover composed with it is this cover.
#[derive(Clone, Debug)]
pub struct ShHomStage {
    pub seq: FormalSequence,
    pub refine: FormalMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShHomResult {
    pub dim: usize,
    pub stage_dims: Vec<usize>,
    pub stable_at: usize,
}

/// Colimit of `ker(⊕ hom(Y_β, X') -> ⊕ hom(Z_γ, X'))` along refining covers of `X`.
///
/// Stage 0 is `hom(X, X')`. Stops at the first pair of consecutive stages of
/// equal dimension joined by an isomorphism.
pub fn sh_hom(c: &FinLinearCategory, x: Obj, x2: Obj, stages: &[ShHomStage]) -> Result<ShHomResult> {
    let field = c.field();
    let mut prev = Subspace::full(field, c.hom_dim(x, x2));
    let mut dims = vec![prev.dim()];
    for (k, st) in stages.iter().enumerate() {
        if st.seq.target != x {
            return Err(Error::TargetMismatch("stage covers a different object".into()));
        }
        let p = st.seq.p_formal()?;
        let cur = Subspace::span(&p.pre_matrix(c, x2).kernel());
        let conn = st.refine.pre_matrix(c, x2);
        let moved = prev.image(&conn)?;
        if !cur.contains(&moved)? {
            return Err(Error::Validation(format!("stage {} does not refine stage {k}", k + 1)));
        }
        dims.push(cur.dim());
        if moved.dim() == prev.dim() && moved == cur {
            return Ok(ShHomResult { dim: cur.dim(), stage_dims: dims, stable_at: k });
        }
        prev = cur;
    }
    Err(Error::Unstable(format!("stage dimensions {dims:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::lincat::{f2xf2, truncated_poly};
    use crate::presheaf::enumerate_presheaves;
    use crate::sieve::generated_sieve;

    fn e1_topology(c: &FinLinearCategory) -> Topology {
        Topology::from_min_sieves(c, vec![generated_sieve(c, 0, &[c.basis_morphism(0, 0, 0)]).unwrap()]).unwrap()
    }

    #[test]
    fn localisation_at_e1() {
        let c = f2xf2();
        let t = e1_topology(&c);
        let y = Presheaf::representable(&c, 0);
        let sh = sheafify(&c, &t, &y).unwrap();
        assert_eq!(sh.sheaf.dim(0), 1);
        assert!(is_sheaf(&c, &t, &sh.sheaf).unwrap());
        assert!(!is_separated(&c, &t, &y).unwrap());
    }

    #[test]
    fn kernel_of_z_is_e2() {
        let c = f2xf2();
        let t = e1_topology(&c);
        let k = kernel_of_z(&c, &t, 0, 0).unwrap();
        let e2 = Subspace::from_vectors(c.field(), 2, &[c.basis_morphism(0, 0, 1).coords]).unwrap();
        assert_eq!(k, e2);
        assert_eq!(kernel_of_z_via_unit(&c, &t, 0, 0).unwrap(), e2);
        assert!(kernel_of_z(&c, &Topology::coarsest(&c), 0, 0).unwrap().is_zero());
    }

    #[test]
    fn sheaves_have_iso_units() {
        let c = truncated_poly(Field::F2, 2).unwrap();
        for t in [Topology::coarsest(&c), Topology::finest(&c)] {
            for f in enumerate_presheaves(&c, 2, 1000).unwrap() {
                let sh = sheafify(&c, &t, &f).unwrap();
                assert!(is_sheaf(&c, &t, &sh.sheaf).unwrap());
                assert!(sh.unit.is_natural(&c, &f, &sh.sheaf));
                if is_sheaf(&c, &t, &f).unwrap() {
                    assert!(sh.unit.is_iso());
                }
            }
        }
    }

    #[test]
    fn finest_topology_kills_everything() {
        let c = truncated_poly(Field::F2, 3).unwrap();
        let t = Topology::finest(&c);
        let sh = sheafify(&c, &t, &Presheaf::representable(&c, 0)).unwrap();
        assert!(sh.sheaf.is_zero());
    }
}
