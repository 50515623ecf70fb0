use std::collections::HashMap;

use super::{FinLinearCategory, Graded, Morphism, Obj};
use crate::error::{Error, Result};
use crate::exactla::Scalar;

/// How tensor products of morphisms are computed.
#[derive(Clone, Debug)]
pub enum TensorLaw {
    /// `table[(a, b, a2, b2)]` holds `f_i ⊗ g_j` for basis `f_i: a->a2`,
    /// `g_j: b->b2`, laid out as `[(i*dim(b,b2) + j)*dim(a⊗b, a2⊗b2) + k]`.
    Table(HashMap<(Obj, Obj, Obj, Obj), Vec<Scalar>>),
    /// One object, commutative endomorphism algebra: `f ⊗ g = f ∘ g`.
    Commutative,
    /// Polynomial multiplication in a graded window.
    Graded,
}

/// A strict monoidal structure, possibly only partially defined on objects.
#[derive(Clone, Debug)]
pub struct MonoidalStructure {
    pub unit: Obj,
    tensor: Vec<Vec<Option<Obj>>>,
    law: TensorLaw,
    braiding: Option<HashMap<(Obj, Obj), Vec<Scalar>>>,
}

impl MonoidalStructure {
    pub fn new(
        unit: Obj,
        tensor: Vec<Vec<Option<Obj>>>,
        law: TensorLaw,
        braiding: Option<HashMap<(Obj, Obj), Vec<Scalar>>>,
    ) -> MonoidalStructure {
        MonoidalStructure { unit, tensor, law, braiding }
    }

    pub fn commutative() -> MonoidalStructure {
        MonoidalStructure { unit: 0, tensor: vec![vec![Some(0)]], law: TensorLaw::Commutative, braiding: None }
    }

    pub(crate) fn graded(g: &Graded) -> MonoidalStructure {
        let n = (g.hi - g.lo + 1) as usize;
        let tensor = (0..n)
            .map(|a| (0..n).map(|b| g.object(g.shift(a) + g.shift(b))).collect())
            .collect();
        let unit = g.object(0).expect("window contains S<0>");
        MonoidalStructure { unit, tensor, law: TensorLaw::Graded, braiding: None }
    }

    pub fn law(&self) -> &TensorLaw {
        &self.law
    }

    pub fn tensor_obj_opt(&self, a: Obj, b: Obj) -> Option<Obj> {
        self.tensor[a][b]
    }

    pub fn tensor_obj(&self, c: &FinLinearCategory, a: Obj, b: Obj) -> Result<Obj> {
        self.tensor[a][b].ok_or_else(|| Error::WindowOverflow(format!("{} ⊗ {}", c.label(a), c.label(b))))
    }

    /// `f ⊗ g`.
    pub fn tensor_mor(&self, c: &FinLinearCategory, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let src = self.tensor_obj(c, f.src, g.src)?;
        let tgt = self.tensor_obj(c, f.tgt, g.tgt)?;
        let field = c.field();
        let mut coords = vec![field.zero(); c.hom_dim(src, tgt)];
        match &self.law {
            TensorLaw::Commutative => return c.compose(f, g),
            TensorLaw::Table(t) => {
                let dg = c.hom_dim(g.src, g.tgt);
                let d = coords.len();
                let Some(entry) = t.get(&(f.src, g.src, f.tgt, g.tgt)) else {
                    return Ok(Morphism { src, tgt, coords });
                };
                for (i, x) in f.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (j, y) in g.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        let xy = x * y;
                        for k in 0..d {
                            let e = &entry[(i * dg + j) * d + k];
                            if !e.is_zero() {
                                coords[k] = &coords[k] + &(&xy * e);
                            }
                        }
                    }
                }
            }
            TensorLaw::Graded => {
                let gr = c.graded().expect("graded law on graded category");
                let (df, dg) = (gr.degree(f.src, f.tgt).unwrap_or(0), gr.degree(g.src, g.tgt).unwrap_or(0));
                for (i, x) in f.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (j, y) in g.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        let k = gr.product(df, i, dg, j);
                        coords[k] = &coords[k] + &(x * y);
                    }
                }
            }
        }
        Ok(Morphism { src, tgt, coords })
    }

    /// Symmetry `a ⊗ b -> b ⊗ a`, when one is specified.
    pub fn braiding(&self, c: &FinLinearCategory, a: Obj, b: Obj) -> Option<Morphism> {
        let src = self.tensor[a][b]?;
        let tgt = self.tensor[b][a]?;
        match &self.law {
            TensorLaw::Commutative | TensorLaw::Graded => Some(c.identity(src)),
            TensorLaw::Table(_) => {
                let coords = self.braiding.as_ref()?.get(&(a, b))?.clone();
                Some(Morphism { src, tgt, coords })
            }
        }
    }

    pub fn has_braiding(&self) -> bool {
        !matches!(self.law, TensorLaw::Table(_)) || self.braiding.is_some()
    }

    /// Dual object, for the rigid laws with a known duality.
    pub fn dual_obj(&self, c: &FinLinearCategory, a: Obj) -> Option<Obj> {
        match &self.law {
            TensorLaw::Commutative => Some(a),
            TensorLaw::Graded => {
                let g = c.graded()?;
                g.object(-g.shift(a))
            }
            TensorLaw::Table(_) => None,
        }
    }

    /// Transpose `f*: b* -> a*` of `f: a -> b`.
    pub fn dual_mor(&self, c: &FinLinearCategory, f: &Morphism) -> Option<Morphism> {
        let src = self.dual_obj(c, f.tgt)?;
        let tgt = self.dual_obj(c, f.src)?;
        Some(Morphism { src, tgt, coords: f.coords.clone() })
    }

    /// Unit laws, identities and interchange on basis morphisms.
    pub(crate) fn validate(&self, c: &FinLinearCategory) -> Vec<String> {
        let mut out = Vec::new();
        let u = self.unit;
        for a in c.objs() {
            if self.tensor[u][a] != Some(a) || self.tensor[a][u] != Some(a) {
                out.push(format!("unit law fails at {}", c.label(a)));
            }
        }
        if let TensorLaw::Commutative = self.law {
            for f in c.basis_morphisms(0, 0) {
                for g in c.basis_morphisms(0, 0) {
                    if c.compose(&f, &g).ok() != c.compose(&g, &f).ok() {
                        out.push("endomorphism algebra is not commutative".into());
                        return out;
                    }
                }
            }
            return out;
        }
        for a in c.objs() {
            for b in c.objs() {
                if let Ok(t) = self.tensor_mor(c, &c.identity(a), &c.identity(b)) {
                    if t != c.identity(t.src) {
                        out.push(format!("id ⊗ id is not the identity on {} ⊗ {}", c.label(a), c.label(b)));
                    }
                }
            }
        }
        let objs: Vec<Obj> = c.objs().collect();
        for &a in &objs {
            for &a2 in &objs {
                for &a3 in &objs {
                    for &b in &objs {
                        for &b2 in &objs {
                            for &b3 in &objs {
                                if let Some(v) = self.interchange_violation(c, [a, a2, a3], [b, b2, b3]) {
                                    out.push(v);
                                    return out;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn interchange_violation(&self, c: &FinLinearCategory, a: [Obj; 3], b: [Obj; 3]) -> Option<String> {
        for f in c.basis_morphisms(a[0], a[1]) {
            for f2 in c.basis_morphisms(a[1], a[2]) {
                for g in c.basis_morphisms(b[0], b[1]) {
                    for g2 in c.basis_morphisms(b[1], b[2]) {
                        let (Ok(x), Ok(y)) = (self.tensor_mor(c, &f2, &g2), self.tensor_mor(c, &f, &g)) else {
                            continue;
                        };
                        let lhs = c.compose(&x, &y).ok()?;
                        let rhs = self
                            .tensor_mor(c, &c.compose(&f2, &f).ok()?, &c.compose(&g2, &g).ok()?)
                            .ok()?;
                        if lhs != rhs {
                            return Some(format!(
                                "interchange law fails on {} ⊗ {}",
                                c.label(a[0]),
                                c.label(b[0])
                            ));
                        }
                    }
                }
            }
        }
        None
    }
}
