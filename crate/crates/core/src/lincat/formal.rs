use super::{FinLinearCategory, Morphism, Obj};
use crate::error::{Error, Result};
use crate::exactla::Matrix;

/// A matrix of morphisms between formal direct sums.
///
/// `comps[i][j]` is the component `src[i] -> tgt[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalMorphism {
    pub src: Vec<Obj>,
    pub tgt: Vec<Obj>,
    pub comps: Vec<Vec<Morphism>>,
}

impl FormalMorphism {
    pub fn new(src: Vec<Obj>, tgt: Vec<Obj>, comps: Vec<Vec<Morphism>>) -> Result<FormalMorphism> {
        if comps.len() != src.len() {
            return Err(Error::Shape("component rows do not match source summands".into()));
        }
        for (i, row) in comps.iter().enumerate() {
            if row.len() != tgt.len() {
                return Err(Error::Shape("component columns do not match target summands".into()));
            }
            for (j, m) in row.iter().enumerate() {
                if m.src != src[i] || m.tgt != tgt[j] {
                    return Err(Error::Shape(format!("component ({i}, {j}) has the wrong endpoints")));
                }
            }
        }
        Ok(FormalMorphism { src, tgt, comps })
    }

    /// Morphism from a sum into a single object.
    pub fn into_object(c: &FinLinearCategory, legs: &[Morphism], tgt: Obj) -> Result<FormalMorphism> {
        if legs.iter().any(|m| m.tgt != tgt) {
            return Err(Error::Shape("leg with the wrong target".into()));
        }
        let _ = c;
        FormalMorphism::new(legs.iter().map(|m| m.src).collect(), vec![tgt], legs.iter().map(|m| vec![m.clone()]).collect())
    }

    pub fn zero(c: &FinLinearCategory, src: &[Obj], tgt: &[Obj]) -> FormalMorphism {
        let comps = src.iter().map(|&a| tgt.iter().map(|&b| c.zero(a, b)).collect()).collect();
        FormalMorphism { src: src.to_vec(), tgt: tgt.to_vec(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(Morphism::is_zero)
    }

    /// `g ∘ f`.
    pub fn compose(c: &FinLinearCategory, g: &FormalMorphism, f: &FormalMorphism) -> Result<FormalMorphism> {
        if f.tgt != g.src {
            return Err(Error::Shape("formal morphisms are not composable".into()));
        }
        let mut comps = Vec::with_capacity(f.src.len());
        for (i, &a) in f.src.iter().enumerate() {
            let mut row = Vec::with_capacity(g.tgt.len());
            for (k, &z) in g.tgt.iter().enumerate() {
                let mut acc = c.zero(a, z);
                for j in 0..f.tgt.len() {
                    acc = acc.add(&c.compose(&g.comps[j][k], &f.comps[i][j])?);
                }
                row.push(acc);
            }
            comps.push(row);
        }
        Ok(FormalMorphism { src: f.src.clone(), tgt: g.tgt.clone(), comps })
    }

    /// Matrix of `self ∘ -: ⊕ hom(w, src_i) -> ⊕ hom(w, tgt_j)`.
    pub fn post_matrix(&self, c: &FinLinearCategory, w: Obj) -> Matrix {
        let rows: Vec<usize> = self.tgt.iter().map(|&b| c.hom_dim(w, b)).collect();
        let cols: Vec<usize> = self.src.iter().map(|&a| c.hom_dim(w, a)).collect();
        Matrix::blocks(c.field(), &rows, &cols, |j, i| Some(c.post_matrix(&self.comps[i][j], w)))
            .expect("block shapes agree")
    }

    /// Matrix of `- ∘ self: ⊕ hom(tgt_j, y) -> ⊕ hom(src_i, y)`.
    pub fn pre_matrix(&self, c: &FinLinearCategory, y: Obj) -> Matrix {
        let rows: Vec<usize> = self.src.iter().map(|&a| c.hom_dim(a, y)).collect();
        let cols: Vec<usize> = self.tgt.iter().map(|&b| c.hom_dim(b, y)).collect();
        Matrix::blocks(c.field(), &rows, &cols, |i, j| Some(c.pre_matrix(&self.comps[i][j], y)))
            .expect("block shapes agree")
    }

    /// `self ⊗ id_x`, summand by summand.
    pub fn tensor_right(&self, c: &FinLinearCategory, x: Obj) -> Result<FormalMorphism> {
        let m = c.monoidal().ok_or_else(|| Error::Unsupported("category has no tensor product".into()))?;
        let id = c.identity(x);
        let src = self.src.iter().map(|&a| m.tensor_obj(c, a, x)).collect::<Result<Vec<_>>>()?;
        let tgt = self.tgt.iter().map(|&a| m.tensor_obj(c, a, x)).collect::<Result<Vec<_>>>()?;
        let comps = self
            .comps
            .iter()
            .map(|row| row.iter().map(|f| m.tensor_mor(c, f, &id)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(FormalMorphism { src, tgt, comps })
    }
}

/// A complex `⊕ Z_γ --p--> ⊕ Y_β --q--> X` with `q ∘ p = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSequence {
    pub target: Obj,
    pub middle: Vec<Obj>,
    pub left: Vec<Obj>,
    /// `q[β]: middle[β] -> target`.
    pub q: Vec<Morphism>,
    /// `p[γ][β]: left[γ] -> middle[β]`.
    pub p: Vec<Vec<Morphism>>,
}

impl FormalSequence {
    pub fn new(c: &FinLinearCategory, q: Vec<Morphism>, target: Obj, p: Vec<Vec<Morphism>>, left: Vec<Obj>) -> Result<FormalSequence> {
        let middle: Vec<Obj> = q.iter().map(|m| m.src).collect();
        let s = FormalSequence { target, middle, left, q, p };
        let qf = s.q_formal(c)?;
        let pf = s.p_formal()?;
        if !FormalMorphism::compose(c, &qf, &pf)?.is_zero() {
            return Err(Error::NotAComplex("q ∘ p is not zero".into()));
        }
        Ok(s)
    }

    pub fn q_formal(&self, c: &FinLinearCategory) -> Result<FormalMorphism> {
        FormalMorphism::into_object(c, &self.q, self.target)
    }

    pub fn p_formal(&self) -> Result<FormalMorphism> {
        FormalMorphism::new(self.left.clone(), self.middle.clone(), self.p.clone())
    }

    /// `σ ⊗ x`.
    pub fn tensor_right(&self, c: &FinLinearCategory, x: Obj) -> Result<FormalSequence> {
        let m = c.monoidal().ok_or_else(|| Error::Unsupported("category has no tensor product".into()))?;
        let q = self.q_formal(c)?.tensor_right(c, x)?;
        let p = self.p_formal()?.tensor_right(c, x)?;
        Ok(FormalSequence {
            target: m.tensor_obj(c, self.target, x)?,
            middle: q.src.clone(),
            left: p.src.clone(),
            q: q.comps.into_iter().map(|mut r| r.remove(0)).collect(),
            p: p.comps,
        })
    }
}
