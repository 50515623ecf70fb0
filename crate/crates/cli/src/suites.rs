//! Bundled verification suites for `addtop verify`.

use addtop::corpus::{bundled, cubic_truncation, dual_numbers, f2, f2xf2_instance, kelly, Instance};
use addtop::exactla::Field;
use addtop::lincat::{graded_window, FinLinearCategory};
use addtop::monoidal::{
    classify_u, cofinite_monomial_family, compare_tv, graded_generator, monoidal_check, monoidal_check_pretopology, proj_hom,
    tv_pretopology, UClass,
};
use addtop::presheaf::{enumerate_presheaves, nat_space, Presheaf};
use addtop::pretop::{check_pta, check_ptb, generating_pretopology, is_sheaf_via, top_of};
use addtop::properties::subcanonical_check;
use addtop::sheafify::{is_separated, is_sheaf, kernel_of_z, kernel_of_z_via_unit, sheafify, sigma};
use addtop::topology::{axiom_check, enumerate_topologies, join_meet, Topology};
use addtop::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const PRESHEAF_CAP: usize = 1 << 14;

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub seed: u64,
    pub max_dim: usize,
    pub max_sieves: usize,
    pub depth: Option<usize>,
}

#[derive(Debug, Default)]
pub struct SuiteOutcome {
    pub theorem: &'static str,
    pub instances: Vec<String>,
    pub checks: usize,
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
}

impl SuiteOutcome {
    fn new(theorem: &'static str, instances: &[&Instance]) -> SuiteOutcome {
        SuiteOutcome { theorem, instances: instances.iter().map(|i| i.name.to_string()).collect(), ..SuiteOutcome::default() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "instances": self.instances,
            "checks": self.checks,
            "failures": self.failures,
            "passed": self.passed(),
        })
    }
}

type SuiteFn = fn(&Caps) -> Result<SuiteOutcome>;

pub const SUITES: [(&str, SuiteFn); 12] = [
    ("axioms", axioms),
    ("enumeration", enumeration),
    ("roundtrip", roundtrip),
    ("sheaf-via", sheaf_via),
    ("join", join),
    ("sheafification", sheafification),
    ("localisation", localisation),
    ("kernel", kernel),
    ("u-class", u_class),
    ("proj-hom", projective),
    ("monoidal", monoidal),
    ("kelly", kelly_product),
];

pub fn lookup(name: &str) -> Option<SuiteFn> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, f)| *f)
}

fn presheaves(c: &FinLinearCategory, caps: &Caps) -> Result<Vec<Presheaf>> {
    enumerate_presheaves(c, caps.max_dim, PRESHEAF_CAP)
}

fn refs(list: &[Instance]) -> Vec<&Instance> {
    list.iter().collect()
}

fn axioms(caps: &Caps) -> Result<SuiteOutcome> {
    let all = bundled();
    let mut out = SuiteOutcome::new("coarsest and finest families satisfy the topology axioms; every pretopology satisfies PTa and PTb", &refs(&all));
    for inst in &all {
        let c = &inst.category;
        for t in [Topology::coarsest(c), Topology::finest(c)] {
            out.expect(axiom_check(c, &t, &[], caps.max_sieves)?.ok(), || format!("{}: trivial topology failed", inst.name));
        }
        for (name, s) in &inst.pretopologies {
            let pta = check_pta(c, s)?;
            let ptb = check_ptb(c, s)?.verdict;
            out.expect(!pta.is_violated() && !ptb.is_violated(), || format!("{} {name}: pretopology axiom violated", inst.name));
            if !pta.is_verified() || !ptb.is_verified() {
                out.warnings.push(format!("{} {name}: verdict Unknown", inst.name));
            }
        }
    }
    Ok(out)
}

fn enumeration(caps: &Caps) -> Result<SuiteOutcome> {
    let (a, b) = (f2xf2_instance(), f2());
    let mut out = SuiteOutcome::new("topology counts on F2xF2 and F2", &[&a, &b]);
    for (inst, want) in [(&a, 4), (&b, 2)] {
        let found = enumerate_topologies(&inst.category, caps.max_sieves)?;
        out.expect(found.len() == want, || format!("{}: {} topologies, expected {want}", inst.name, found.len()));
    }
    Ok(out)
}

fn roundtrip(caps: &Caps) -> Result<SuiteOutcome> {
    let all = bundled();
    let mut out = SuiteOutcome::new("top(pre′(T)) = T", &refs(&all));
    for inst in &all {
        let c = &inst.category;
        for t in enumerate_topologies(c, caps.max_sieves)? {
            let back = top_of(c, &generating_pretopology(c, &t)?)?;
            out.expect(back == t, || format!("{}: round trip changed {:?}", inst.name, t.to_json(c)));
        }
    }
    Ok(out)
}

fn sheaf_via(caps: &Caps) -> Result<SuiteOutcome> {
    let all = bundled();
    let mut out = SuiteOutcome::new("sheaves for a pretopology are the sheaves for the topology it generates", &refs(&all));
    for inst in &all {
        let c = &inst.category;
        let fs = presheaves(c, caps)?;
        for (name, s) in &inst.pretopologies {
            let t = top_of(c, s)?;
            for f in &fs {
                let agree = is_sheaf_via(c, s, f)? == is_sheaf(c, &t, f)?;
                out.expect(agree, || format!("{} {name}: disagreement on dims {:?}", inst.name, f.dims()));
            }
        }
    }
    Ok(out)
}

fn join(caps: &Caps) -> Result<SuiteOutcome> {
    let all = bundled();
    let mut out = SuiteOutcome::new("sheaves for a join of topologies are the intersection of the sheaf classes", &refs(&all));
    for inst in &all {
        let c = &inst.category;
        let lattice = enumerate_topologies(c, caps.max_sieves)?;
        let fs = presheaves(c, caps)?;
        for a in &lattice {
            for b in &lattice {
                let (j, _) = join_meet(c, &[a.clone(), b.clone()])?;
                out.expect(a.is_coarser_than(&j) && b.is_coarser_than(&j), || format!("{}: join is not an upper bound", inst.name));
                for f in &fs {
                    let both = is_sheaf(c, a, f)? && is_sheaf(c, b, f)?;
                    out.expect(is_sheaf(c, &j, f)? == both, || format!("{}: Sh(join) differs on dims {:?}", inst.name, f.dims()));
                }
            }
        }
    }
    Ok(out)
}

fn sheafification(caps: &Caps) -> Result<SuiteOutcome> {
    let all = bundled();
    let mut out = SuiteOutcome::new("sheafification is left adjoint to inclusion; Σ separates; sheaves are fixed", &refs(&all));
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
    for inst in &all {
        let c = &inst.category;
        let lattice = enumerate_topologies(c, caps.max_sieves)?;
        let fs = presheaves(c, caps)?;
        for k in 0..100 {
            let t = &lattice[k % lattice.len()];
            let f = &fs[rng.gen_range(0..fs.len())];
            let g = sheafify(c, t, &fs[rng.gen_range(0..fs.len())])?.sheaf;
            let sh = sheafify(c, t, f)?;
            out.expect(nat_space(c, &sh.sheaf, &g).dim() == nat_space(c, f, &g).dim(), || format!("{}: adjunction fails", inst.name));
            out.expect(is_separated(c, t, &sigma(c, t, f)?.presheaf)?, || format!("{}: ΣF not separated", inst.name));
            if is_sheaf(c, t, f)? {
                out.expect(sh.unit.is_iso(), || format!("{}: unit of a sheaf is not iso", inst.name));
            }
        }
    }
    Ok(out)
}

fn localisation(caps: &Caps) -> Result<SuiteOutcome> {
    let (k, cubic) = (f2xf2_instance(), cubic_truncation());
    let mut out = SuiteOutcome::new("localising F2xF2 at e1 keeps e1M; x generates the finest topology on F2[x]/(x^3)", &[&k, &cubic]);
    let c = &k.category;
    let t = top_of(c, k.pretopology("s_e1").expect("bundled"))?;
    out.expect(sheafify(c, &t, &Presheaf::representable(c, 0))?.sheaf.total_dim() == 1, || "sheafified K is not 1-dimensional".into());
    let e1 = c.morphism_ints(0, 0, &[1, 0])?;
    for f in presheaves(c, caps)? {
        out.expect(sheafify(c, &t, &f)?.sheaf.dim(0) == f.act(&e1).rank(), || format!("e1M mismatch on dims {:?}", f.dims()));
    }
    let cc = &cubic.category;
    let tx = top_of(cc, cubic.pretopology("s_x").expect("bundled"))?;
    out.expect(tx == Topology::finest(cc), || "x does not generate the finest topology".into());
    Ok(out)
}

fn kernel(caps: &Caps) -> Result<SuiteOutcome> {
    let all = bundled();
    let mut out = SuiteOutcome::new("the kernel of Z is the set of maps killed by a covering sieve; zero when subcanonical", &refs(&all));
    for inst in &all {
        let c = &inst.category;
        for t in enumerate_topologies(c, caps.max_sieves)? {
            let sub = subcanonical_check(c, &t)?.subcanonical;
            for x in c.objs() {
                for y in c.objs() {
                    let k = kernel_of_z(c, &t, x, y)?;
                    out.expect(k == kernel_of_z_via_unit(c, &t, x, y)?, || format!("{}: kernel formula mismatch", inst.name));
                    out.expect(!sub || k.is_zero(), || format!("{}: nonzero kernel on a subcanonical topology", inst.name));
                }
            }
        }
    }
    Ok(out)
}

fn u_class(_: &Caps) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("(x0,x1) is a strict epimorphism onto the unit, x0 only an epimorphism", &[]);
    out.instances = vec!["graded n=1 [-4,4]".into(), "graded n=1 [-6,6]".into()];
    for (lo, hi) in [(-4, 4), (-6, 6)] {
        let c = graded_window(Field::F2, 1, lo, hi)?;
        let v = graded_generator(&c)?;
        out.expect(classify_u(&c, &v)?.class == UClass::InUex, || format!("[{lo},{hi}]: (x0,x1) not InUex"));
        out.expect(classify_u(&c, &v[..1])?.class == UClass::InUep, || format!("[{lo},{hi}]: x0 not InUep"));
    }
    Ok(out)
}

fn projective(caps: &Caps) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("hom dimensions of twisting sheaves on projective space", &[]);
    out.instances = vec!["P^1".into(), "P^2".into()];
    let stages = caps.depth.unwrap_or(3);
    let cases = [(1, 0, 1), (1, 1, 2), (1, 2, 3), (1, 3, 4), (1, -1, 0), (1, -2, 0), (2, 1, 3)];
    for (n, d, want) in cases {
        let window = if n == 1 { 6 } else { 4 };
        let got = proj_hom(n, d, window, stages.min(if n == 1 { 3 } else { 2 }))?.dim;
        out.expect(got == want, || format!("projHom({n},{d}) = {got}, expected {want}"));
    }
    Ok(out)
}

fn monoidal(_: &Caps) -> Result<SuiteOutcome> {
    let k = f2xf2_instance();
    let mut out = SuiteOutcome::new("covering sieves stay covering after tensoring", &[&k]);
    out.instances.push("graded n=1 [-4,4]".into());
    let c = graded_window(Field::F2, 1, -4, 4)?;
    let v = graded_generator(&c)?;
    let tv = tv_pretopology(&c, &[v.clone()])?;
    let r = monoidal_check_pretopology(&c, &tv.pretopology)?;
    out.expect(r.monoidal, || format!("T_v not monoidal at {:?}", r.witness));
    out.warnings.push(format!("graded window: {} (X, A) pairs clipped", r.clipped.len()));
    out.warnings.extend(tv.warnings);
    for t in [Topology::coarsest(&c), Topology::finest(&c)] {
        out.expect(monoidal_check(&c, &t)?.monoidal, || "trivial topology not monoidal".into());
    }
    let family = cofinite_monomial_family(&c, 3)?;
    out.expect(compare_tv(&c, &v, &family, 4)?.equal(), || "T_V differs from T_v".into());
    for (name, s) in &k.pretopologies {
        let t = top_of(&k.category, s)?;
        out.expect(monoidal_check(&k.category, &t)?.monoidal, || format!("F2xF2 {name}: not monoidal"));
    }
    Ok(out)
}

fn kelly_product(caps: &Caps) -> Result<SuiteOutcome> {
    let (a, b) = (f2xf2_instance(), dual_numbers());
    let mut out = SuiteOutcome::new("sheaves on a tensor of sites are the bi-sheaves", &[&a, &b]);
    for (ln, _) in &a.pretopologies {
        for (rn, _) in &b.pretopologies {
            let k = kelly(ln, rn);
            let c = &k.category;
            let union = k.rows.union(&k.columns);
            let t = top_of(c, &union)?;
            let (tr, tc) = (top_of(c, &k.rows)?, top_of(c, &k.columns)?);
            for f in presheaves(c, caps)? {
                let both = is_sheaf(c, &tr, &f)? && is_sheaf(c, &tc, &f)?;
                out.expect(is_sheaf(c, &t, &f)? == both, || format!("{ln} ⊗ {rn}: disagreement on dims {:?}", f.dims()));
            }
        }
    }
    Ok(out)
}
