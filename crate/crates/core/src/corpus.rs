//! Bundled example instances over `F_2` and their pretopologies.

use crate::exactla::Field;
use crate::lincat::{a2_module_category, a2_quiver, algebra_f2, f2xf2, tensor_category, truncated_poly, FinLinearCategory, FormalSequence};
use crate::pretop::{gabriel_sequence, kelly_left, kelly_right, Pretopology};

pub struct Instance {
    pub name: &'static str,
    pub category: FinLinearCategory,
    pub pretopologies: Vec<(String, Pretopology)>,
}

impl Instance {
    pub fn pretopology(&self, name: &str) -> Option<&Pretopology> {
        self.pretopologies.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

fn endo(c: &FinLinearCategory, ints: &[i64]) -> crate::lincat::Morphism {
    c.morphism_ints(0, 0, ints).expect("endomorphism of the single object")
}

fn gabriel(c: &FinLinearCategory, sets: &[&[&[i64]]]) -> Pretopology {
    Pretopology::new(
        sets.iter()
            .map(|xs| gabriel_sequence(c, &xs.iter().map(|x| endo(c, x)).collect::<Vec<_>>()).expect("commuting elements"))
            .collect(),
    )
}

pub fn f2() -> Instance {
    let c = algebra_f2();
    let pretopologies = vec![("empty".into(), Pretopology::empty()), ("s_1".into(), gabriel(&c, &[&[&[1]]]))];
    Instance { name: "F2", category: c, pretopologies }
}

pub fn f2xf2_instance() -> Instance {
    let c = f2xf2();
    let (e1, e2): (&[i64], &[i64]) = (&[1, 0], &[0, 1]);
    let pretopologies = vec![
        ("empty".into(), Pretopology::empty()),
        ("s_e1".into(), gabriel(&c, &[&[e1]])),
        ("s_e2".into(), gabriel(&c, &[&[e2]])),
        ("s_e1+s_e2".into(), gabriel(&c, &[&[e1], &[e2]])),
        ("s_{e1,e2}".into(), gabriel(&c, &[&[e1, e2]])),
    ];
    Instance { name: "F2xF2", category: c, pretopologies }
}

pub fn dual_numbers() -> Instance {
    let c = truncated_poly(Field::F2, 2).expect("F2[x]/(x^2)");
    let pretopologies = vec![("empty".into(), Pretopology::empty()), ("s_x".into(), gabriel(&c, &[&[&[0, 1]]]))];
    Instance { name: "F2[x]/(x^2)", category: c, pretopologies }
}

pub fn cubic_truncation() -> Instance {
    let c = truncated_poly(Field::F2, 3).expect("F2[x]/(x^3)");
    let pretopologies = vec![("s_x".into(), gabriel(&c, &[&[&[0, 1, 0]]])), ("s_x^2".into(), gabriel(&c, &[&[&[0, 0, 1]]]))];
    Instance { name: "F2[x]/(x^3)", category: c, pretopologies }
}

pub fn a2() -> Instance {
    let c = a2_quiver(Field::F2);
    let (v1, v2) = (c.obj("v1").expect("v1"), c.obj("v2").expect("v2"));
    let a = c.basis_morphism(v1, v2, 0);
    let seq = FormalSequence::new(&c, vec![a], v2, vec![], vec![]).expect("single arrow");
    Instance { name: "A2", category: c, pretopologies: vec![("empty".into(), Pretopology::empty()), ("a".into(), Pretopology::new(vec![seq]))] }
}

/// Projective, simple and injective modules of the `A2` quiver.
pub fn a2_modules() -> Instance {
    let c = a2_module_category(Field::F2).expect("A2 modules");
    let (s2, p, s1) = (c.obj("S2").expect("S2"), c.obj("P").expect("P"), c.obj("S1").expect("S1"));
    let (i, pi) = (c.basis_morphism(s2, p, 0), c.basis_morphism(p, s1, 0));
    let seq = FormalSequence::new(&c, vec![pi], s1, vec![vec![i]], vec![s2]).expect("pi ∘ i = 0");
    Instance {
        name: "A2mod",
        category: c,
        pretopologies: vec![("empty".into(), Pretopology::empty()), ("cokernel".into(), Pretopology::new(vec![seq]))],
    }
}

/// Every bundled instance with an exhaustive topology lattice.
pub fn bundled() -> Vec<Instance> {
    vec![f2(), f2xf2_instance(), dual_numbers(), cubic_truncation(), a2(), a2_modules()]
}

pub fn by_name(name: &str) -> Option<Instance> {
    bundled().into_iter().find(|i| i.name == name)
}

/// Tensor category of `F2xF2` and `F2[x]/(x^2)` with row and column pretopologies.
pub struct KellyInstance {
    pub left: Instance,
    pub right: Instance,
    pub category: FinLinearCategory,
    pub rows: Pretopology,
    pub columns: Pretopology,
}

pub fn kelly(left_name: &str, right_name: &str) -> KellyInstance {
    let (left, right) = (f2xf2_instance(), dual_numbers());
    let category = tensor_category(&left.category, &right.category).expect("same field");
    let rows = kelly_left(&right.category, left.pretopology(left_name).expect("left pretopology"));
    let columns = kelly_right(&left.category, &right.category, right.pretopology(right_name).expect("right pretopology"));
    KellyInstance { left, right, category, rows, columns }
}
