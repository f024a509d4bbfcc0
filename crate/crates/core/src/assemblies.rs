//! Finite assemblies, realizer verification, and the categorical realizer
//! recipes checked pointwise.
//!
//! An assembly is a finite set of points, each carrying a non-empty finite
//! set of realizers from an applicative structure. A map of assemblies must
//! be tracked by one element: `r a` defined and in the realizer set of the
//! image point, for every realizer `a` of every point. The closed-structure
//! suite builds the realizers of the categorical data (hom action,
//! evaluation, currying, tensor with unitors and associator, and the
//! left-hom data of bi-structures) out of the bracket-abstraction engine and
//! verifies each one on the given finite assemblies; every verdict is a
//! statement about those instances only.

use crate::algebra::{interpret, AlgebraError, ApplicativeStructure};
use crate::compile::{
    abstract_left, abstract_planar, abstract_right, capp, clapp, cvar, sym, CombSym, CombTerm,
};
use crate::rewrite::EqVerdict;
use std::collections::BTreeMap;

/// A point map between assembly carriers.
pub type PointMap = BTreeMap<String, String>;

/// A realized family: one found map per point, with the family realizer.
pub type HomAssignment<E> = (BTreeMap<String, FoundMap<E>>, E);

type PendingAssembly = (String, Vec<(String, Vec<Term>)>);
type PendingMap = (String, String, String, Term, PointMap);

#[derive(Clone, Debug)]
pub struct Assembly<E> {
    points: Vec<String>,
    realizers: BTreeMap<String, Vec<E>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssemblyError {
    #[error("realizer set of point {0} is empty")]
    EmptyRealizers(String),
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("point {0} is not in the assembly")]
    NoSuchPoint(String),
    #[error("map is not total: point {0} has no image")]
    PartialMap(String),
    #[error("application undefined while building realizers")]
    Undefined,
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
}

impl<E: Clone> Assembly<E> {
    pub fn new(data: Vec<(String, Vec<E>)>) -> Result<Assembly<E>, AssemblyError> {
        let mut points = Vec::new();
        let mut realizers = BTreeMap::new();
        for (p, rs) in data {
            if rs.is_empty() {
                return Err(AssemblyError::EmptyRealizers(p));
            }
            if realizers.insert(p.clone(), rs).is_some() {
                return Err(AssemblyError::DuplicatePoint(p));
            }
            points.push(p);
        }
        Ok(Assembly { points, realizers })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn realizers(&self, p: &str) -> &[E] {
        self.realizers.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Pairwise-disjoint realizer sets.
    pub fn is_modest<S: ApplicativeStructure<Elem = E>>(&self, s: &S) -> bool {
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                for a in self.realizers(p) {
                    for b in self.realizers(q) {
                        if matches!(s.eq(a, b), EqVerdict::Equal) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct AssemblyMap<E> {
    pub source: Assembly<E>,
    pub target: Assembly<E>,
    pub function: BTreeMap<String, String>,
    pub realizer: E,
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

fn elem_in<S: ApplicativeStructure>(s: &S, e: &S::Elem, set: &[S::Elem]) -> bool {
    set.iter().any(|c| matches!(s.eq(e, c), EqVerdict::Equal))
}

/// Verifies the realizer condition of a map exhaustively.
pub fn check_map<S: ApplicativeStructure>(
    s: &S,
    m: &AssemblyMap<S::Elem>,
) -> Result<CheckReport, AssemblyError> {
    let mut report = CheckReport::default();
    for p in m.source.points() {
        let q = m
            .function
            .get(p)
            .ok_or_else(|| AssemblyError::PartialMap(p.clone()))?;
        if !m.target.realizers.contains_key(q) {
            return Err(AssemblyError::NoSuchPoint(q.clone()));
        }
        for a in m.source.realizers(p) {
            match s.rapp(&m.realizer, a) {
                None => report.fail(format!(
                    "undefined application at point {p}, realizer {}",
                    s.show(a)
                )),
                Some(v) => {
                    if !elem_in(s, &v, m.target.realizers(q)) {
                        report.fail(format!(
                            "realizer condition fails at {p} -> {q}: {} lands at {}",
                            s.show(a),
                            s.show(&v)
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// First element of the universe that realizes the function, if any.
pub fn search_realizer<S: ApplicativeStructure>(
    s: &S,
    function: &BTreeMap<String, String>,
    source: &Assembly<S::Elem>,
    target: &Assembly<S::Elem>,
    universe: &[S::Elem],
) -> Option<S::Elem> {
    universe
        .iter()
        .find(|r| realizes(s, r, function, source, target))
        .cloned()
}

/// Name of a tensor point.
pub fn pair_point(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// The tensor of two assemblies: carrier is the product, realizers are the
/// pairwise `P p q` applications.
pub fn tensor_assembly<S: ApplicativeStructure>(
    s: &S,
    x: &Assembly<S::Elem>,
    y: &Assembly<S::Elem>,
) -> Result<Assembly<S::Elem>, AssemblyError> {
    let p_elem = s
        .distinguished("P")
        .ok_or_else(|| AlgebraError::MissingSymbol("P".into()))?;
    let mut data = Vec::new();
    for px in x.points() {
        for py in y.points() {
            let mut rs = Vec::new();
            for a in x.realizers(px) {
                for b in y.realizers(py) {
                    let v = s
                        .rapp(&s.rapp(&p_elem, a).ok_or(AssemblyError::Undefined)?, b)
                        .ok_or(AssemblyError::Undefined)?;
                    if !elem_in(s, &v, &rs) {
                        rs.push(v);
                    }
                }
            }
            data.push((pair_point(px, py), rs));
        }
    }
    Assembly::new(data)
}

/// The unit assembly: one point realized by the identity element.
pub fn unit_assembly<S: ApplicativeStructure>(
    s: &S,
    id_symbol: &str,
) -> Result<Assembly<S::Elem>, AssemblyError> {
    let i = s
        .distinguished(id_symbol)
        .ok_or_else(|| AlgebraError::MissingSymbol(id_symbol.into()))?;
    Ok(Assembly::new(vec![("*".to_string(), vec![i])]).expect("unit assembly"))
}

// ---------------------------------------------------------------------------
// Applicative morphisms.
// ---------------------------------------------------------------------------

pub type RelationFn<'f, A, B> = Box<
    dyn Fn(&<A as ApplicativeStructure>::Elem) -> Vec<<B as ApplicativeStructure>::Elem> + 'f,
>;

/// A total relation between two structures, tracked by a realizer in the
/// target; the relation is given as a function to finite sets.
pub struct MorphismSpec<'f, A: ApplicativeStructure, B: ApplicativeStructure> {
    pub relation: RelationFn<'f, A, B>,
    pub realizer: B::Elem,
}

/// Verifies `r (γ a) (γ a') ⊆ γ (a a')` on the sampled pairs.
pub fn check_morphism<A: ApplicativeStructure, B: ApplicativeStructure>(
    a: &A,
    b: &B,
    spec: &MorphismSpec<'_, A, B>,
    samples: &[A::Elem],
) -> CheckReport {
    let mut report = CheckReport::default();
    for x in samples {
        for y in samples {
            let Some(xy) = a.rapp(x, y) else { continue };
            let target = (spec.relation)(&xy);
            for bx in (spec.relation)(x) {
                for by in (spec.relation)(y) {
                    match sapp2(b, &spec.realizer, &bx, &by) {
                        None => report.fail(format!(
                            "morphism realizer undefined at {} , {}",
                            a.show(x),
                            a.show(y)
                        )),
                        Some(v) => {
                            if !target
                                .iter()
                                .any(|t| matches!(b.eq(&v, t), EqVerdict::Equal))
                            {
                                report.fail(format!(
                                    "morphism condition fails at {} , {}",
                                    a.show(x),
                                    a.show(y)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

fn sapp2<S: ApplicativeStructure>(
    s: &S,
    r: &S::Elem,
    a: &S::Elem,
    b: &S::Elem,
) -> Option<S::Elem> {
    s.rapp(&s.rapp(r, a)?, b)
}

/// An adjoint pair of morphisms `δ : B → A` and `γ : A → B` together with
/// realizers for the two preorder conditions.
pub struct AdjointPair<'f, A: ApplicativeStructure, B: ApplicativeStructure> {
    pub gamma: MorphismSpec<'f, A, B>,
    pub delta: MorphismSpec<'f, B, A>,
    /// Realizes `δ ∘ γ ≼ id` (element of A).
    pub counit: A::Elem,
    /// Realizes `id ≼ γ ∘ δ` (element of B).
    pub unit: B::Elem,
}

/// Verifies the four adjoint-pair conditions on samples.
pub fn check_adjoint<A: ApplicativeStructure, B: ApplicativeStructure>(
    a: &A,
    b: &B,
    pair: &AdjointPair<'_, A, B>,
    a_samples: &[A::Elem],
    b_samples: &[B::Elem],
) -> Vec<(String, CheckReport)> {
    let mut out = Vec::new();
    out.push((
        "gamma morphism".to_string(),
        check_morphism(a, b, &pair.gamma, a_samples),
    ));
    out.push((
        "delta morphism".to_string(),
        check_morphism(b, a, &pair.delta, b_samples),
    ));
    // δ ∘ γ ≼ id: for every u in δ(γ(x)), counit · u = x.
    let mut counit = CheckReport::default();
    for x in a_samples {
        for m in (pair.gamma.relation)(x) {
            for u in (pair.delta.relation)(&m) {
                match a.rapp(&pair.counit, &u) {
                    Some(v) if matches!(a.eq(&v, x), EqVerdict::Equal) => {}
                    _ => counit.fail(format!("counit fails at {}", a.show(x))),
                }
            }
        }
    }
    out.push(("delta . gamma =< id".to_string(), counit));
    // id ≼ γ ∘ δ: unit · y lands in γ(δ(y)).
    let mut unit = CheckReport::default();
    for y in b_samples {
        let mut targets = Vec::new();
        for u in (pair.delta.relation)(y) {
            targets.extend((pair.gamma.relation)(&u));
        }
        match b.rapp(&pair.unit, y) {
            Some(v) => {
                if !targets
                    .iter()
                    .any(|t| matches!(b.eq(&v, t), EqVerdict::Equal))
                {
                    unit.fail(format!("unit fails at {}", b.show(y)));
                }
            }
            None => unit.fail(format!("unit undefined at {}", b.show(y))),
        }
    }
    out.push(("id =< gamma . delta".to_string(), unit));
    out
}

// ---------------------------------------------------------------------------
// The closed-structure suite.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SuiteItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    fn push(&mut self, name: &str, result: Result<CheckReport, AssemblyError>) {
        match result {
            Ok(rep) => self.items.push(SuiteItem {
                name: name.to_string(),
                pass: rep.ok(),
                detail: rep.failures.first().cloned().unwrap_or_default(),
            }),
            Err(e) => self.items.push(SuiteItem {
                name: name.to_string(),
                pass: false,
                detail: e.to_string(),
            }),
        }
    }
}

/// A point map together with realizers for it found in the universe.
#[derive(Clone, Debug)]
pub struct FoundMap<E> {
    pub function: BTreeMap<String, String>,
    pub realizers: Vec<E>,
}

/// Enumerates all functions between the carriers and keeps those realized by
/// some universe element (up to `max_realizers` witnesses each).
pub fn found_maps<S: ApplicativeStructure>(
    s: &S,
    x: &Assembly<S::Elem>,
    y: &Assembly<S::Elem>,
    universe: &[S::Elem],
    max_realizers: usize,
) -> Vec<FoundMap<S::Elem>> {
    let nx = x.len();
    let ny = y.len();
    if ny == 0 || ny.pow(nx as u32) > 256 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let total = ny.pow(nx as u32);
    for code in 0..total {
        let mut c = code;
        let mut function = BTreeMap::new();
        for p in x.points() {
            function.insert(p.clone(), y.points()[c % ny].clone());
            c /= ny;
        }
        let mut realizers = Vec::new();
        for r in universe {
            if realizers.len() >= max_realizers {
                break;
            }
            if realizes(s, r, &function, x, y) && !elem_in(s, r, &realizers) {
                realizers.push(r.clone());
            }
        }
        if !realizers.is_empty() {
            out.push(FoundMap {
                function,
                realizers,
            });
        }
    }
    out
}

/// Does `r` track `function` from `x` to `y`?
pub fn realizes<S: ApplicativeStructure>(
    s: &S,
    r: &S::Elem,
    function: &BTreeMap<String, String>,
    x: &Assembly<S::Elem>,
    y: &Assembly<S::Elem>,
) -> bool {
    let m = AssemblyMap {
        source: x.clone(),
        target: y.clone(),
        function: function.clone(),
        realizer: r.clone(),
    };
    matches!(check_map(s, &m), Ok(rep) if rep.ok())
}

fn compose_fn(
    f: &BTreeMap<String, String>,
    g: &BTreeMap<String, String>,
) -> BTreeMap<String, String> {
    f.iter()
        .map(|(p, q)| (p.clone(), g.get(q).cloned().unwrap_or_default()))
        .collect()
}

fn interp_closed<S: ApplicativeStructure>(
    s: &S,
    ct: &CombTerm,
    holes: &[S::Elem],
) -> Result<S::Elem, AssemblyError> {
    interpret(s, ct, holes, &BTreeMap::new())?.ok_or(AssemblyError::Undefined)
}

/// `λ*v1...vn. body` over the planar basis, with holes for parameters.
fn planar_abs(body: CombTerm, vars: &[&str]) -> CombTerm {
    let mut t = body;
    for v in vars.iter().rev() {
        t = abstract_planar(&t, v).expect("recipe polynomial is planar");
    }
    t
}

fn right_abs(body: CombTerm, vars: &[&str]) -> CombTerm {
    let mut t = body;
    for v in vars.iter().rev() {
        t = abstract_right(&t, v).expect("recipe polynomial is right-planar");
    }
    t
}

fn left_abs(body: CombTerm, var: &str) -> CombTerm {
    abstract_left(&body, var).expect("recipe polynomial is left-planar")
}

/// Which recipe families a structure supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteLevel {
    pub multicategory: bool,
    pub closed_category: bool,
    pub monoidal_closed: bool,
    pub bi_closed: bool,
}

pub fn detect_level<S: ApplicativeStructure>(s: &S) -> SuiteLevel {
    let probe = s.distinguished("I").or_else(|| s.distinguished("I>"));
    let has_dot = probe
        .as_ref()
        .map(|i| s.unary("dot", i).is_some())
        .unwrap_or(false);
    let multicategory =
        s.distinguished("B").is_some() && s.distinguished("I").is_some() && has_dot;
    let closed_category = multicategory && s.distinguished("IX").is_some();
    let monoidal_closed =
        closed_category && s.distinguished("L").is_some() && s.distinguished("P").is_some();
    let bi_closed = s.has_lapp()
        && ["B>", "B<", "D>", "D<", "I>", "I<"]
            .iter()
            .all(|n| s.distinguished(n).is_some())
        && probe
            .as_ref()
            .map(|i| s.unary("dagr", i).is_some() && s.unary("dagl", i).is_some())
            .unwrap_or(false);
    SuiteLevel {
        multicategory,
        closed_category,
        monoidal_closed,
        bi_closed,
    }
}

/// Runs every supported categorical datum on the given assemblies. The
/// realizers come from the combinatory recipes; maps are drawn from the
/// functions realized within `universe`.
pub fn closed_structure_suite<S: ApplicativeStructure>(
    s: &S,
    x: &Assembly<S::Elem>,
    y: &Assembly<S::Elem>,
    z: &Assembly<S::Elem>,
    universe: &[S::Elem],
) -> SuiteReport {
    let mut report = SuiteReport::default();
    let level = detect_level(s);
    if level.multicategory {
        multicat_items(s, x, y, z, universe, &mut report);
    }
    if level.closed_category {
        closed_cat_items(s, x, y, universe, &mut report);
    }
    if level.monoidal_closed {
        monoidal_items(s, x, y, z, universe, &mut report);
    }
    if level.bi_closed {
        bi_closed_items(s, x, y, z, universe, &mut report);
    }
    report
}

pub fn identity_fn<E: Clone>(x: &Assembly<E>) -> BTreeMap<String, String> {
    x.points().iter().map(|p| (p.clone(), p.clone())).collect()
}

const MAP_CAP: usize = 6;

fn multicat_items<S: ApplicativeStructure>(
    s: &S,
    x: &Assembly<S::Elem>,
    y: &Assembly<S::Elem>,
    z: &Assembly<S::Elem>,
    universe: &[S::Elem],
    report: &mut SuiteReport,
) {
    let i = s.distinguished("I").unwrap();
    let b = s.distinguished("B").unwrap();

    // Identities realized by I.
    {
        let mut rep = CheckReport::default();
        for a in [x, y, z] {
            if !realizes(s, &i, &identity_fn(a), a, a) {
                rep.fail("identity not realized by I".into());
            }
        }
        report.push("identity realizer", Ok(rep));
    }

    let fx_y = found_maps(s, x, y, universe, 2);
    let fy_z = found_maps(s, y, z, universe, 2);
    let fz_x = found_maps(s, z, x, universe, 2);

    // Composition realized by B r_g r_f.
    {
        let mut rep = CheckReport::default();
        let mut checked = 0;
        for f in fx_y.iter().take(MAP_CAP) {
            for g in fy_z.iter().take(MAP_CAP) {
                let gf = compose_fn(&f.function, &g.function);
                for rf in &f.realizers {
                    for rg in &g.realizers {
                        checked += 1;
                        match sapp2(s, &b, rg, rf) {
                            Some(r) => {
                                if !realizes(s, &r, &gf, x, z) {
                                    rep.fail("B r_g r_f fails to realize g . f".into());
                                }
                            }
                            None => rep.fail("composition realizer undefined".into()),
                        }
                    }
                }
            }
        }
        if checked == 0 {
            rep.fail("no composable map pairs found in universe".into());
        }
        report.push("composition realizer", Ok(rep));
    }

    // Hom action: λ*u v. r_g (u (r_f v)) sends realizers of h : X -> Y to
    // realizers of g . h . f : Z -> Z for f : Z -> X, g : Y -> Z.
    {
        let mut rep = CheckReport::default();
        let mut checked = 0;
        let recipe = planar_abs(
            capp(
                CombTerm::Hole(0),
                capp(cvar("u"), capp(CombTerm::Hole(1), cvar("v"))),
            ),
            &["u", "v"],
        );
        for f in fz_x.iter().take(MAP_CAP) {
            for g in fy_z.iter().take(MAP_CAP) {
                for h in fx_y.iter().take(MAP_CAP) {
                    let ghf = compose_fn(&compose_fn(&f.function, &h.function), &g.function);
                    let rf = &f.realizers[0];
                    let rg = &g.realizers[0];
                    for rh in &h.realizers {
                        checked += 1;
                        let action = interp_closed(s, &recipe, &[rg.clone(), rf.clone()]);
                        match action.and_then(|r| s.rapp(&r, rh).ok_or(AssemblyError::Undefined))
                        {
                            Ok(r2) => {
                                if !realizes(s, &r2, &ghf, z, z) {
                                    rep.fail("hom action fails to track g . h . f".into());
                                }
                            }
                            Err(e) => rep.fail(format!("hom action undefined: {e}")),
                        }
                    }
                }
            }
        }
        if checked == 0 {
            rep.fail("no map triples found in universe".into());
        }
        report.push("internal hom action", Ok(rep));
    }

    // Evaluation: I p a lands in the realizers of h(pt).
    {
        let mut rep = CheckReport::default();
        for h in fx_y.iter().take(MAP_CAP) {
            for p in &h.realizers {
                for pt in x.points() {
                    for a in x.realizers(pt) {
                        match sapp2(s, &i, p, a) {
                            Some(v) => {
                                let img = &h.function[pt];
                                if !elem_in(s, &v, y.realizers(img)) {
                                    rep.fail("evaluation fails".into());
                                }
                            }
                            None => rep.fail("evaluation undefined".into()),
                        }
                    }
                }
            }
        }
        report.push("evaluation map", Ok(rep));
    }

    // Currying: a realizer of a curried family is pointwise a realizer of
    // the two-argument map, and conversely.
    {
        let mut rep = CheckReport::default();
        let assignments = hom_assignments(s, z, x, y, universe);
        if assignments.is_empty() {
            rep.fail("no curried maps found in universe".into());
        }
        for (assign, r) in assignments.iter().take(MAP_CAP) {
            for pt in z.points() {
                for q in z.realizers(pt) {
                    for px in x.points() {
                        for a in x.realizers(px) {
                            let ok = s
                                .rapp(r, q)
                                .and_then(|rz| s.rapp(&rz, a))
                                .map(|v| {
                                    let img = &assign[pt].function[px];
                                    elem_in(s, &v, y.realizers(img))
                                })
                                .unwrap_or(false);
                            if !ok {
                                rep.fail("curried realizer fails binary condition".into());
                            }
                        }
                    }
                }
            }
        }
        report.push("currying", Ok(rep));
    }
}

/// Functions from `z` to maps(x -> y) realized within the universe: for each
/// assignment of a found map to every point of `z`, search a universe
/// element `r` with `r q` realizing the assigned map for all realizers `q`.
fn hom_assignments<S: ApplicativeStructure>(
    s: &S,
    z: &Assembly<S::Elem>,
    x: &Assembly<S::Elem>,
    y: &Assembly<S::Elem>,
    universe: &[S::Elem],
) -> Vec<HomAssignment<S::Elem>> {
    let maps = found_maps(s, x, y, universe, 1);
    if maps.is_empty() {
        return Vec::new();
    }
    let nz = z.len();
    let nm = maps.len().min(3);
    if nm.pow(nz as u32) > 81 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for code in 0..nm.pow(nz as u32) {
        let mut c = code;
        let mut assign = BTreeMap::new();
        for p in z.points() {
            assign.insert(p.clone(), maps[c % nm].clone());
            c /= nm;
        }
        for r in universe {
            let ok = z.points().iter().all(|p| {
                z.realizers(p).iter().all(|q| match s.rapp(r, q) {
                    Some(rz) => realizes(s, &rz, &assign[p].function, x, y),
                    None => false,
                })
            });
            if ok {
                out.push((assign.clone(), r.clone()));
                break;
            }
        }
    }
    out
}

fn closed_cat_items<S: ApplicativeStructure>(
    s: &S,
    x: &Assembly<S::Elem>,
    y: &Assembly<S::Elem>,
    _universe: &[S::Elem],
    report: &mut SuiteReport,
) {
    let i = s.distinguished("I").unwrap();
    let ix = s.distinguished("IX").unwrap();

    // j: I I must realize the identity.
    {
        let mut rep = CheckReport::default();
        match s.rapp(&i, &i) {
            Some(ii) => {
                for a in [x, y] {
                    if !realizes(s, &ii, &identity_fn(a), a, a) {
                        rep.fail("j realizer fails".into());
                    }
                }
            }
            None => rep.fail("j undefined".into()),
        }
        report.push("unit-to-hom map j", Ok(rep));
    }

    // i: hom(I, X) -> X realized by dot I; inverse realized by IX. The
    // points of hom(I, X) are represented by the canonical candidates dot a.
    {
        let mut rep = CheckReport::default();
        let dot_i = match s.unary("dot", &i) {
            Some(v) => v,
            None => {
                report.push(
                    "hom-unit isomorphism i",
                    Err(AlgebraError::MissingUnary("dot".into()).into()),
                );
                return;
            }
        };
        for asm in [x, y] {
            for pt in asm.points() {
                for a in asm.realizers(pt) {
                    let cand = match s.unary("dot", a) {
                        Some(c) => c,
                        None => {
                            rep.fail("dot unavailable on realizer".into());
                            continue;
                        }
                    };
                    // dot a realizes the point of hom(I, X) at pt.
                    match s.rapp(&cand, &i) {
                        Some(v) if elem_in(s, &v, asm.realizers(pt)) => {}
                        _ => rep.fail("candidate hom(I,X) realizer broken".into()),
                    }
                    match s.rapp(&dot_i, &cand) {
                        Some(v) => {
                            if !elem_in(s, &v, asm.realizers(pt)) {
                                rep.fail("i fails".into());
                            }
                        }
                        None => rep.fail("i undefined".into()),
                    }
                    match sapp2(s, &ix, a, &i) {
                        Some(v) => {
                            if !elem_in(s, &v, asm.realizers(pt)) {
                                rep.fail("i inverse fails".into());
                            }
                        }
                        None => rep.fail("i inverse undefined".into()),
                    }
                }
            }
        }
        report.push("hom-unit isomorphism i", Ok(rep));
    }
}

fn monoidal_items<S: ApplicativeStructure>(
    s: &S,
    x: &Assembly<S::Elem>,
    y: &Assembly<S::Elem>,
    z: &Assembly<S::Elem>,
    universe: &[S::Elem],
    report: &mut SuiteReport,
) {
    use CombSym::{ITimes, L, P};
    let unit = match unit_assembly(s, "I") {
        Ok(u) => u,
        Err(e) => {
            report.push("tensor data", Err(e));
            return;
        }
    };
    let xy = match tensor_assembly(s, x, y) {
        Ok(t) => t,
        Err(e) => {
            report.push("tensor data", Err(e));
            return;
        }
    };

    // Tensor of maps: L (λ*p q. P (r_f p) (r_g q)).
    {
        let mut rep = CheckReport::default();
        let fx_y = found_maps(s, x, y, universe, 1);
        let fy_z = found_maps(s, y, z, universe, 1);
        let mut checked = 0;
        let recipe = capp(
            sym(L),
            planar_abs(
                capp(
                    capp(sym(P), capp(CombTerm::Hole(0), cvar("p"))),
                    capp(CombTerm::Hole(1), cvar("q")),
                ),
                &["p", "q"],
            ),
        );
        for f in fx_y.iter().take(MAP_CAP) {
            for g in fy_z.iter().take(MAP_CAP) {
                checked += 1;
                let rf = &f.realizers[0];
                let rg = &g.realizers[0];
                let target = match tensor_assembly(s, y, z) {
                    Ok(t) => t,
                    Err(e) => {
                        rep.fail(e.to_string());
                        continue;
                    }
                };
                let function: BTreeMap<String, String> = x
                    .points()
                    .iter()
                    .flat_map(|px| {
                        y.points().iter().map(move |py| {
                            (
                                pair_point(px, py),
                                pair_point(&f.function[px], &g.function[py]),
                            )
                        })
                    })
                    .collect();
                match interp_closed(s, &recipe, &[rf.clone(), rg.clone()]) {
                    Ok(r) => {
                        if !realizes(s, &r, &function, &xy, &target) {
                            rep.fail("tensor of maps fails".into());
                        }
                    }
                    Err(e) => rep.fail(format!("tensor recipe undefined: {e}")),
                }
            }
        }
        if checked == 0 {
            rep.fail("no map pairs found for tensor functor".into());
        }
        report.push("tensor of maps", Ok(rep));
    }

    // Unitors.
    {
        let mut rep = CheckReport::default();
        let built = (|| -> Result<_, AssemblyError> {
            Ok((
                tensor_assembly(s, &unit, x)?,
                tensor_assembly(s, x, &unit)?,
            ))
        })();
        match built {
            Ok((ix_asm, xi_asm)) => {
                let lam_fn: BTreeMap<String, String> = x
                    .points()
                    .iter()
                    .map(|p| (pair_point("*", p), p.clone()))
                    .collect();
                let lam_inv_fn: BTreeMap<String, String> = x
                    .points()
                    .iter()
                    .map(|p| (p.clone(), pair_point("*", p)))
                    .collect();
                let rho_fn: BTreeMap<String, String> = x
                    .points()
                    .iter()
                    .map(|p| (p.clone(), pair_point(p, "*")))
                    .collect();
                let rho_inv_fn: BTreeMap<String, String> =
                    rho_fn.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
                let li = capp(sym(L), sym(CombSym::I));
                let pi = capp(sym(P), sym(CombSym::I));
                let rho = planar_abs(capp(capp(sym(P), cvar("p")), sym(CombSym::I)), &["p"]);
                let rho_inv = capp(sym(L), sym(ITimes));
                for (name, recipe, f, src, tgt) in [
                    ("left unitor", &li, &lam_fn, &ix_asm, x),
                    ("left unitor inverse", &pi, &lam_inv_fn, x, &ix_asm),
                    ("right unitor", &rho, &rho_fn, x, &xi_asm),
                    ("right unitor inverse", &rho_inv, &rho_inv_fn, &xi_asm, x),
                ] {
                    match interp_closed(s, recipe, &[]) {
                        Ok(r) => {
                            if !realizes(s, &r, f, src, tgt) {
                                rep.fail(format!("{name} fails"));
                            }
                        }
                        Err(e) => rep.fail(format!("{name} undefined: {e}")),
                    }
                }
            }
            Err(e) => rep.fail(e.to_string()),
        }
        report.push("unitors", Ok(rep));
    }

    // Associator both ways.
    {
        let mut rep = CheckReport::default();
        let built = (|| -> Result<_, AssemblyError> {
            let src = tensor_assembly(s, &xy, z)?;
            let yz = tensor_assembly(s, y, z)?;
            let tgt = tensor_assembly(s, x, &yz)?;
            Ok((src, tgt))
        })();
        match built {
            Ok((src, tgt)) => {
                let assoc_fn: BTreeMap<String, String> = x
                    .points()
                    .iter()
                    .flat_map(|px| {
                        y.points().iter().flat_map(move |py| {
                            z.points().iter().map(move |pz| {
                                (
                                    pair_point(&pair_point(px, py), pz),
                                    pair_point(px, &pair_point(py, pz)),
                                )
                            })
                        })
                    })
                    .collect();
                let inv_fn: BTreeMap<String, String> =
                    assoc_fn.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
                let alpha = capp(
                    sym(L),
                    capp(
                        sym(L),
                        planar_abs(
                            capp(
                                capp(sym(P), cvar("p")),
                                capp(capp(sym(P), cvar("q")), cvar("r")),
                            ),
                            &["p", "q", "r"],
                        ),
                    ),
                );
                let m_inner = planar_abs(
                    capp(
                        capp(sym(P), capp(capp(sym(P), cvar("p")), cvar("q"))),
                        cvar("r"),
                    ),
                    &["p", "q", "r"],
                );
                let alpha_inv = capp(
                    sym(L),
                    planar_abs(
                        capp(capp(sym(L), capp(m_inner, cvar("p"))), cvar("u")),
                        &["p", "u"],
                    ),
                );
                match interp_closed(s, &alpha, &[]) {
                    Ok(r) => {
                        if !realizes(s, &r, &assoc_fn, &src, &tgt) {
                            rep.fail("associator fails".into());
                        }
                    }
                    Err(e) => rep.fail(format!("associator undefined: {e}")),
                }
                match interp_closed(s, &alpha_inv, &[]) {
                    Ok(r) => {
                        if !realizes(s, &r, &inv_fn, &tgt, &src) {
                            rep.fail("associator inverse fails".into());
                        }
                    }
                    Err(e) => rep.fail(format!("associator inverse undefined: {e}")),
                }
            }
            Err(e) => rep.fail(e.to_string()),
        }
        report.push("associator", Ok(rep));
    }

    // Tensor evaluation against hom points materialized from found maps.
    {
        let mut rep = CheckReport::default();
        let maps = found_maps(s, x, y, universe, 2);
        if maps.is_empty() {
            rep.fail("no maps found for evaluation".into());
        }
        match interp_closed(s, &capp(sym(L), sym(CombSym::I)), &[]) {
            Ok(ev) => {
                let p_elem = s.distinguished("P").unwrap();
                for h in maps.iter().take(MAP_CAP) {
                    for p in &h.realizers {
                        for pt in x.points() {
                            for a in x.realizers(pt) {
                                let img = &h.function[pt];
                                let ok = s
                                    .rapp(&p_elem, p)
                                    .and_then(|v| s.rapp(&v, a))
                                    .and_then(|pr| s.rapp(&ev, &pr))
                                    .map(|v| elem_in(s, &v, y.realizers(img)))
                                    .unwrap_or(false);
                                if !ok {
                                    rep.fail("tensor evaluation fails".into());
                                }
                            }
                        }
                    }
                }
            }
            Err(e) => rep.fail(format!("evaluation realizer undefined: {e}")),
        }
        report.push("tensor evaluation", Ok(rep));
    }

    // Tensor currying: from a realized family z ↦ h_z, the uncurried map on
    // Z ⊗ X is realized by L (λ*q a. r_h q a), and its re-curried form by
    // λ*q p. r_f (P q p).
    {
        let mut rep = CheckReport::default();
        let assignments = hom_assignments(s, z, x, y, universe);
        if assignments.is_empty() {
            rep.fail("no curried maps found in universe".into());
        }
        for (assign, rh) in assignments.iter().take(MAP_CAP) {
            let zx = match tensor_assembly(s, z, x) {
                Ok(t) => t,
                Err(e) => {
                    rep.fail(e.to_string());
                    continue;
                }
            };
            let f_fn: BTreeMap<String, String> = z
                .points()
                .iter()
                .flat_map(|pz| {
                    x.points()
                        .iter()
                        .map(move |px| (pair_point(pz, px), assign[pz].function[px].clone()))
                })
                .collect();
            let rf_recipe = capp(
                sym(L),
                planar_abs(
                    capp(capp(CombTerm::Hole(0), cvar("q")), cvar("a")),
                    &["q", "a"],
                ),
            );
            let rf = match interp_closed(s, &rf_recipe, std::slice::from_ref(rh)) {
                Ok(r) => r,
                Err(e) => {
                    rep.fail(format!("uncurried realizer undefined: {e}"));
                    continue;
                }
            };
            if !realizes(s, &rf, &f_fn, &zx, y) {
                rep.fail("uncurried map fails".into());
            }
            let curry_recipe = planar_abs(
                capp(CombTerm::Hole(0), capp(capp(sym(P), cvar("q")), cvar("p"))),
                &["q", "p"],
            );
            match interp_closed(s, &curry_recipe, std::slice::from_ref(&rf)) {
                Ok(r) => {
                    for pz in z.points() {
                        for q in z.realizers(pz) {
                            let ok = s
                                .rapp(&r, q)
                                .map(|rz| realizes(s, &rz, &assign[pz].function, x, y))
                                .unwrap_or(false);
                            if !ok {
                                rep.fail("curried realizer fails".into());
                            }
                        }
                    }
                }
                Err(e) => rep.fail(format!("curry recipe undefined: {e}")),
            }
        }
        report.push("tensor currying", Ok(rep));
    }
}

fn bi_closed_items<S: ApplicativeStructure>(
    s: &S,
    x: &Assembly<S::Elem>,
    y: &Assembly<S::Elem>,
    z: &Assembly<S::Elem>,
    universe: &[S::Elem],
    report: &mut SuiteReport,
) {
    use CombSym::{ILeft, IRight};
    let iright = s.distinguished("I>").unwrap();

    // Tensor realizers λ*<t. t p q.
    let pair_recipe = left_abs(
        capp(capp(cvar("t"), CombTerm::Hole(0)), CombTerm::Hole(1)),
        "t",
    );
    let bi_tensor = |a: &Assembly<S::Elem>,
                     b: &Assembly<S::Elem>|
     -> Result<Assembly<S::Elem>, AssemblyError> {
        let mut data = Vec::new();
        for pa in a.points() {
            for pb in b.points() {
                let mut rs = Vec::new();
                for p in a.realizers(pa) {
                    for q in b.realizers(pb) {
                        let v = interp_closed(s, &pair_recipe, &[p.clone(), q.clone()])?;
                        if !elem_in(s, &v, &rs) {
                            rs.push(v);
                        }
                    }
                }
                data.push((pair_point(pa, pb), rs));
            }
        }
        Assembly::new(data)
    };

    let unit = Assembly::new(vec![("*".to_string(), vec![iright.clone()])]).unwrap();

    // Unitors.
    {
        let mut rep = CheckReport::default();
        match (bi_tensor(&unit, x), bi_tensor(x, &unit)) {
            (Ok(ix_asm), Ok(xi_asm)) => {
                let lam_fn: BTreeMap<String, String> = x
                    .points()
                    .iter()
                    .map(|p| (pair_point("*", p), p.clone()))
                    .collect();
                let lam_inv_fn: BTreeMap<String, String> = x
                    .points()
                    .iter()
                    .map(|p| (p.clone(), pair_point("*", p)))
                    .collect();
                let rho_fn: BTreeMap<String, String> = x
                    .points()
                    .iter()
                    .map(|p| (p.clone(), pair_point(p, "*")))
                    .collect();
                let rho_inv_fn: BTreeMap<String, String> =
                    rho_fn.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
                // λ = λ*>p. I> <@ p ; λ⁻¹ = λ*>p. λ*<t. t I> p
                let lam = right_abs(clapp(sym(IRight), cvar("p")), &["p"]);
                let lam_inv = right_abs(
                    left_abs(capp(capp(cvar("t"), sym(IRight)), cvar("p")), "t"),
                    &["p"],
                );
                // ρ = λ*>p. λ*<t. t p I> ; ρ⁻¹ = λ*>u. (λ*>p v. p <@ (v I<)) <@ u
                let rho = right_abs(
                    left_abs(capp(capp(cvar("t"), cvar("p")), sym(IRight)), "t"),
                    &["p"],
                );
                let rho_inv = right_abs(
                    clapp(
                        right_abs(clapp(cvar("p"), capp(cvar("v"), sym(ILeft))), &["p", "v"]),
                        cvar("u"),
                    ),
                    &["u"],
                );
                for (name, recipe, f, src, tgt) in [
                    ("left unitor", &lam, &lam_fn, &ix_asm, x),
                    ("left unitor inverse", &lam_inv, &lam_inv_fn, x, &ix_asm),
                    ("right unitor", &rho, &rho_fn, x, &xi_asm),
                    ("right unitor inverse", &rho_inv, &rho_inv_fn, &xi_asm, x),
                ] {
                    match interp_closed(s, recipe, &[]) {
                        Ok(r) => {
                            if !realizes(s, &r, f, src, tgt) {
                                rep.fail(format!("bi {name} fails"));
                            }
                        }
                        Err(e) => rep.fail(format!("bi {name} undefined: {e}")),
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => rep.fail(e.to_string()),
        }
        report.push("bi-closed unitors", Ok(rep));
    }

    // Associator both ways.
    {
        let mut rep = CheckReport::default();
        let built = (|| -> Result<_, AssemblyError> {
            let xy = bi_tensor(x, y)?;
            let src = bi_tensor(&xy, z)?;
            let yz = bi_tensor(y, z)?;
            let tgt = bi_tensor(x, &yz)?;
            Ok((src, tgt))
        })();
        match built {
            Ok((src, tgt)) => {
                let assoc_fn: BTreeMap<String, String> = x
                    .points()
                    .iter()
                    .flat_map(|px| {
                        y.points().iter().flat_map(move |py| {
                            z.points().iter().map(move |pz| {
                                (
                                    pair_point(&pair_point(px, py), pz),
                                    pair_point(px, &pair_point(py, pz)),
                                )
                            })
                        })
                    })
                    .collect();
                let inv_fn: BTreeMap<String, String> =
                    assoc_fn.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
                // α = λ*>u. (λ*>v. M <@ v) <@ u with
                // M = λ*>p q r. λ*<t. t p (λ*<t1. t1 q r)
                let m_recipe = right_abs(
                    left_abs(
                        capp(
                            capp(cvar("t"), cvar("p")),
                            left_abs(capp(capp(cvar("t1"), cvar("q")), cvar("r")), "t1"),
                        ),
                        "t",
                    ),
                    &["p", "q", "r"],
                );
                let alpha = right_abs(
                    clapp(right_abs(clapp(m_recipe, cvar("v")), &["v"]), cvar("u")),
                    &["u"],
                );
                // α⁻¹ = λ*>u. (λ*>p v. (λ*>q r. N) <@ v) <@ u with
                // N = λ*<t. (t (λ*<t1. t1 p q)) r
                let n_recipe = left_abs(
                    capp(
                        capp(
                            cvar("t"),
                            left_abs(capp(capp(cvar("t1"), cvar("p")), cvar("q")), "t1"),
                        ),
                        cvar("r"),
                    ),
                    "t",
                );
                let alpha_inv = right_abs(
                    clapp(
                        right_abs(
                            clapp(right_abs(n_recipe, &["q", "r"]), cvar("v")),
                            &["p", "v"],
                        ),
                        cvar("u"),
                    ),
                    &["u"],
                );
                match interp_closed(s, &alpha, &[]) {
                    Ok(r) => {
                        if !realizes(s, &r, &assoc_fn, &src, &tgt) {
                            rep.fail("bi associator fails".into());
                        }
                    }
                    Err(e) => rep.fail(format!("bi associator undefined: {e}")),
                }
                match interp_closed(s, &alpha_inv, &[]) {
                    Ok(r) => {
                        if !realizes(s, &r, &inv_fn, &tgt, &src) {
                            rep.fail("bi associator inverse fails".into());
                        }
                    }
                    Err(e) => rep.fail(format!("bi associator inverse undefined: {e}")),
                }
            }
            Err(e) => rep.fail(e.to_string()),
        }
        report.push("bi-closed associator", Ok(rep));
    }

    // Right hom: evaluation realized by λ*>u. I> <@ u; currying from a
    // realized family z ↦ h_z.
    {
        let mut rep = CheckReport::default();
        let maps = found_maps(s, x, y, universe, 2);
        if maps.is_empty() {
            rep.fail("no maps found for bi evaluation".into());
        }
        let ev = right_abs(clapp(sym(IRight), cvar("u")), &["u"]);
        match interp_closed(s, &ev, &[]) {
            Ok(ev) => {
                for h in maps.iter().take(MAP_CAP) {
                    for p in &h.realizers {
                        for pt in x.points() {
                            for a in x.realizers(pt) {
                                let img = &h.function[pt];
                                let ok =
                                    interp_closed(s, &pair_recipe, &[p.clone(), a.clone()])
                                        .ok()
                                        .and_then(|pr| s.rapp(&ev, &pr))
                                        .map(|v| elem_in(s, &v, y.realizers(img)))
                                        .unwrap_or(false);
                                if !ok {
                                    rep.fail("bi evaluation fails".into());
                                }
                            }
                        }
                    }
                }
            }
            Err(e) => rep.fail(format!("bi evaluation undefined: {e}")),
        }
        report.push("bi-closed evaluation", Ok(rep));

        let mut rep = CheckReport::default();
        let assignments = hom_assignments(s, z, x, y, universe);
        if assignments.is_empty() {
            rep.fail("no curried maps found in universe".into());
        }
        for (assign, rh) in assignments.iter().take(MAP_CAP) {
            let zx = match bi_tensor(z, x) {
                Ok(t) => t,
                Err(e) => {
                    rep.fail(e.to_string());
                    continue;
                }
            };
            let f_fn: BTreeMap<String, String> = z
                .points()
                .iter()
                .flat_map(|pz| {
                    x.points()
                        .iter()
                        .map(move |px| (pair_point(pz, px), assign[pz].function[px].clone()))
                })
                .collect();
            // r_f = λ*>u. (λ*>q a. r_h q a) <@ u
            let rf_recipe = right_abs(
                clapp(
                    right_abs(
                        capp(capp(CombTerm::Hole(0), cvar("q")), cvar("a")),
                        &["q", "a"],
                    ),
                    cvar("u"),
                ),
                &["u"],
            );
            let rf = match interp_closed(s, &rf_recipe, std::slice::from_ref(rh)) {
                Ok(r) => r,
                Err(e) => {
                    rep.fail(format!("bi uncurried realizer undefined: {e}"));
                    continue;
                }
            };
            if !realizes(s, &rf, &f_fn, &zx, y) {
                rep.fail("bi uncurried map fails".into());
            }
            // Λ(f) = λ*>q p. r_f (λ*<t. t q p)
            let curry_recipe = right_abs(
                capp(
                    CombTerm::Hole(0),
                    left_abs(capp(capp(cvar("t"), cvar("q")), cvar("p")), "t"),
                ),
                &["q", "p"],
            );
            match interp_closed(s, &curry_recipe, std::slice::from_ref(&rf)) {
                Ok(r) => {
                    for pz in z.points() {
                        for q in z.realizers(pz) {
                            let ok = s
                                .rapp(&r, q)
                                .map(|rz| realizes(s, &rz, &assign[pz].function, x, y))
                                .unwrap_or(false);
                            if !ok {
                                rep.fail("bi curried realizer fails".into());
                            }
                        }
                    }
                }
                Err(e) => rep.fail(format!("bi curry recipe undefined: {e}")),
            }
        }
        report.push("bi-closed currying", Ok(rep));
    }

    // Left hom: dagl candidates, the action of f -o g, and the second
    // evaluation map.
    {
        let mut rep = CheckReport::default();
        let fx_y = found_maps(s, x, y, universe, 2);
        let fy_z = found_maps(s, y, z, universe, 2);
        let fz_x = found_maps(s, z, x, universe, 2);
        let mut checked = 0;
        let is_left_hom_realizer = |w: &S::Elem, h: &FoundMap<S::Elem>| -> bool {
            x.points().iter().all(|pt| {
                x.realizers(pt).iter().all(|a| {
                    s.lapp(a, w)
                        .map(|v| elem_in(s, &v, y.realizers(&h.function[pt])))
                        .unwrap_or(false)
                })
            })
        };
        for h in fx_y.iter().take(MAP_CAP) {
            for rh in &h.realizers {
                let w = match s.unary("dagl", rh) {
                    Some(w) => w,
                    None => {
                        rep.fail("dagl unavailable".into());
                        continue;
                    }
                };
                checked += 1;
                if !is_left_hom_realizer(&w, h) {
                    rep.fail("dagl candidate is not a left-hom realizer".into());
                }
                // f -o g action: λ*>u. λ*<v. r_g ((r_f v) <@ u)
                for f in fz_x.iter().take(2) {
                    for g in fy_z.iter().take(2) {
                        let recipe = right_abs(
                            left_abs(
                                capp(
                                    CombTerm::Hole(0),
                                    clapp(capp(CombTerm::Hole(1), cvar("v")), cvar("u")),
                                ),
                                "v",
                            ),
                            &["u"],
                        );
                        let rf = &f.realizers[0];
                        let rg = &g.realizers[0];
                        let ghf =
                            compose_fn(&compose_fn(&f.function, &h.function), &g.function);
                        let ok = interp_closed(s, &recipe, &[rg.clone(), rf.clone()])
                            .ok()
                            .and_then(|r| s.rapp(&r, &w))
                            .map(|w2| {
                                z.points().iter().all(|pt| {
                                    z.realizers(pt).iter().all(|a| {
                                        s.lapp(a, &w2)
                                            .map(|v| elem_in(s, &v, z.realizers(&ghf[pt])))
                                            .unwrap_or(false)
                                    })
                                })
                            })
                            .unwrap_or(false);
                        if !ok {
                            rep.fail("left-hom action fails".into());
                        }
                    }
                }
                // ev': X ⊗ (X -o Y) -> Y realized by
                // λ*>u. (λ*>p v. p <@ v) <@ u
                let evp = right_abs(
                    clapp(
                        right_abs(clapp(cvar("p"), cvar("v")), &["p", "v"]),
                        cvar("u"),
                    ),
                    &["u"],
                );
                match interp_closed(s, &evp, &[]) {
                    Ok(evp) => {
                        for pt in x.points() {
                            for a in x.realizers(pt) {
                                let img = &h.function[pt];
                                let ok =
                                    interp_closed(s, &pair_recipe, &[a.clone(), w.clone()])
                                        .ok()
                                        .and_then(|pr| s.rapp(&evp, &pr))
                                        .map(|v| elem_in(s, &v, y.realizers(img)))
                                        .unwrap_or(false);
                                if !ok {
                                    rep.fail("left-hom evaluation fails".into());
                                }
                            }
                        }
                    }
                    Err(e) => rep.fail(format!("left-hom evaluation undefined: {e}")),
                }
            }
        }
        if checked == 0 {
            rep.fail("no maps found for left hom".into());
        }
        report.push("left hom data", Ok(rep));
    }
}

// ---------------------------------------------------------------------------
// Declarative assembly files (term-model realizers):
//
//   assembly X
//     point a : \x.x ; \x.\y.x y
//   map f : X -> Y realized \u.u
//     a -> c
// ---------------------------------------------------------------------------

use crate::models::TermModel;
use crate::syntax::{parse, Term};

#[derive(Debug, Default)]
pub struct AssemblyFile {
    pub assemblies: BTreeMap<String, Assembly<Term>>,
    pub maps: Vec<(String, AssemblyMap<Term>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("assembly file error: {0}")]
pub struct AssemblyFileError(pub String);

pub fn load_assembly_file(
    model: &TermModel,
    text: &str,
) -> Result<AssemblyFile, AssemblyFileError> {
    let err = |l: usize, m: &str| AssemblyFileError(format!("line {}: {}", l + 1, m));
    let mut out = AssemblyFile::default();
    let mut current: Option<PendingAssembly> = None;
    let mut current_map: Option<PendingMap> = None;
    let parse_term = |l: usize, src: &str| -> Result<Term, AssemblyFileError> {
        let t = parse(src.trim(), model.discipline()).map_err(|e| err(l, &e.to_string()))?;
        model
            .element(&t)
            .map_err(|e| err(l, &format!("bad realizer: {e}")))
    };
    fn flush_asm(
        current: &mut Option<PendingAssembly>,
        out: &mut AssemblyFile,
    ) -> Result<(), AssemblyFileError> {
        if let Some((name, data)) = current.take() {
            let asm = Assembly::new(data)
                .map_err(|e| AssemblyFileError(format!("assembly {name}: {e}")))?;
            out.assemblies.insert(name, asm);
        }
        Ok(())
    }
    fn flush_map(
        current_map: &mut Option<PendingMap>,
        out: &mut AssemblyFile,
    ) -> Result<(), AssemblyFileError> {
        if let Some((name, src, tgt, realizer, function)) = current_map.take() {
            let source = out
                .assemblies
                .get(&src)
                .ok_or_else(|| AssemblyFileError(format!("unknown assembly {src}")))?
                .clone();
            let target = out
                .assemblies
                .get(&tgt)
                .ok_or_else(|| AssemblyFileError(format!("unknown assembly {tgt}")))?
                .clone();
            out.maps.push((
                name,
                AssemblyMap {
                    source,
                    target,
                    function,
                    realizer,
                },
            ));
        }
        Ok(())
    }
    for (l, raw) in text.lines().enumerate() {
        let line = raw.split("--").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("assembly ") {
            flush_asm(&mut current, &mut out)?;
            flush_map(&mut current_map, &mut out)?;
            current = Some((rest.trim().to_string(), Vec::new()));
        } else if let Some(rest) = line.strip_prefix("point ") {
            let (name, terms) = rest
                .split_once(':')
                .ok_or_else(|| err(l, "expected ':' in point line"))?;
            let mut rs = Vec::new();
            for part in terms.split(';') {
                rs.push(parse_term(l, part)?);
            }
            current
                .as_mut()
                .ok_or_else(|| err(l, "point outside assembly"))?
                .1
                .push((name.trim().to_string(), rs));
        } else if let Some(rest) = line.strip_prefix("map ") {
            flush_asm(&mut current, &mut out)?;
            flush_map(&mut current_map, &mut out)?;
            let (name, rest) = rest
                .split_once(':')
                .ok_or_else(|| err(l, "expected ':' in map line"))?;
            let (arrow, realized) = rest
                .split_once(" realized ")
                .ok_or_else(|| err(l, "expected 'realized' in map line"))?;
            let (src, tgt) = arrow
                .split_once("->")
                .ok_or_else(|| err(l, "expected '->' in map line"))?;
            let realizer = parse_term(l, realized)?;
            current_map = Some((
                name.trim().to_string(),
                src.trim().to_string(),
                tgt.trim().to_string(),
                realizer,
                BTreeMap::new(),
            ));
        } else if let Some((p, q)) = line.split_once("->") {
            let cm = current_map
                .as_mut()
                .ok_or_else(|| err(l, "point mapping outside a map block"))?;
            cm.4.insert(p.trim().to_string(), q.trim().to_string());
        } else {
            return Err(err(l, "unrecognized line"));
        }
    }
    flush_asm(&mut current, &mut out)?;
    flush_map(&mut current_map, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Extensible;
    use crate::models::{FiniteMagma, TermModel};

    fn term_assembly(m: &TermModel, pts: &[(&str, &[&str])]) -> Assembly<Term> {
        let mut data = Vec::new();
        for (name, terms) in pts {
            let rs: Vec<Term> = terms
                .iter()
                .map(|t| m.element(&parse(t, m.discipline()).unwrap()).unwrap())
                .collect();
            data.push((name.to_string(), rs));
        }
        Assembly::new(data).unwrap()
    }

    #[test]
    fn identity_map_checks() {
        let m = TermModel::planar();
        let x = term_assembly(&m, &[("a", &["\\x.x"]), ("b", &["\\x.\\y.x y"])]);
        let map = AssemblyMap {
            source: x.clone(),
            target: x.clone(),
            function: identity_fn(&x),
            realizer: m.distinguished("I").unwrap(),
        };
        assert!(check_map(&m, &map).unwrap().ok());
        let bad = AssemblyMap {
            realizer: m.distinguished("B").unwrap(),
            ..map
        };
        let rep = check_map(&m, &bad).unwrap();
        assert!(!rep.ok());
        assert!(!rep.failures.is_empty());
    }

    #[test]
    fn composition_realizer_law() {
        let m = TermModel::planar();
        let b = m.distinguished("B").unwrap();
        let x = term_assembly(&m, &[("a", &["\\x.x"])]);
        let bi = m.rapp(&b, &m.distinguished("I").unwrap()).unwrap();
        let y = Assembly::new(vec![("c".to_string(), vec![bi])]).unwrap();
        let f = AssemblyMap {
            source: x.clone(),
            target: y.clone(),
            function: [("a".to_string(), "c".to_string())].into(),
            realizer: b.clone(),
        };
        assert!(check_map(&m, &f).unwrap().ok());
    }

    #[test]
    fn search_finds_identity() {
        let m = TermModel::planar();
        let x = term_assembly(&m, &[("a", &["\\x.x"]), ("b", &["\\x.\\y.x y"])]);
        let universe = vec![m.distinguished("B").unwrap(), m.distinguished("I").unwrap()];
        let found = search_realizer(&m, &identity_fn(&x), &x, &x, &universe).unwrap();
        assert_eq!(found, m.distinguished("I").unwrap());
        // Swap map on asymmetric realizers is not found in a small universe.
        let swap: BTreeMap<String, String> = [
            ("a".to_string(), "b".to_string()),
            ("b".to_string(), "a".to_string()),
        ]
        .into();
        assert!(search_realizer(&m, &swap, &x, &x, &universe).is_none());
    }

    fn suite_fixture(m: &TermModel) -> (Assembly<Term>, Assembly<Term>, Assembly<Term>) {
        let i = m.distinguished("I").unwrap();
        let b = m.distinguished("B").unwrap();
        let x = Assembly::new(vec![
            ("x0".to_string(), vec![i.clone()]),
            ("x1".to_string(), vec![b.clone()]),
        ])
        .unwrap();
        let y = Assembly::new(vec![
            ("y0".to_string(), vec![i.clone()]),
            ("y1".to_string(), vec![b.clone()]),
        ])
        .unwrap();
        let z = Assembly::new(vec![
            ("z0".to_string(), vec![i]),
            ("z1".to_string(), vec![b.clone()]),
            ("z2".to_string(), vec![b]),
        ])
        .unwrap();
        (x, y, z)
    }

    #[test]
    fn constant_map_realized_by_k() {
        // In the ordinary model a constant map is realized by K applied to
        // a realizer of the target point.
        let m = TermModel::ordinary();
        let k = m.distinguished("K").unwrap();
        let x = term_assembly(&m, &[("a", &["\\x.x"]), ("b", &["\\x.\\y.x y"])]);
        let target = term_assembly(&m, &[("p", &["\\x.\\y.y"])]);
        let constant: BTreeMap<String, String> = [
            ("a".to_string(), "p".to_string()),
            ("b".to_string(), "p".to_string()),
        ]
        .into();
        let k_interp = m.rapp(&k, &target.realizers("p")[0]).unwrap();
        let universe = vec![m.distinguished("I").unwrap(), k_interp];
        let found = search_realizer(&m, &constant, &x, &target, &universe);
        assert!(found.is_some());
    }

    #[test]
    fn corrupted_morphism_realizer_fails_with_witness() {
        let m = TermModel::planar();
        let spec = MorphismSpec::<TermModel, TermModel> {
            relation: Box::new(|a: &Term| vec![a.clone()]),
            realizer: m.distinguished("I").unwrap(),
        };
        let samples = m.sample(5, 6);
        assert!(check_morphism(&m, &m, &spec, &samples).ok());
        // Corrupt the realizer: B is not an identity-morphism realizer.
        let bad = MorphismSpec::<TermModel, TermModel> {
            relation: Box::new(|a: &Term| vec![a.clone()]),
            realizer: m.distinguished("B").unwrap(),
        };
        let rep = check_morphism(&m, &m, &bad, &samples);
        assert!(!rep.ok());
        assert!(!rep.failures.is_empty());
    }

    #[test]
    fn suite_on_tensor_model() {
        let m = TermModel::planar_tensor();
        let (x, y, z) = suite_fixture(&m);
        // The last element collapses both I and B to an identity-map
        // realizer, so curried families exist within the universe.
        let family = m
            .element(&parse("\\q.q (\\a.a) (\\b.b) (\\c.c)", m.discipline()).unwrap())
            .unwrap();
        let universe = vec![
            m.distinguished("I").unwrap(),
            m.distinguished("B").unwrap(),
            m.distinguished("IX").unwrap(),
            m.distinguished("L").unwrap(),
            m.distinguished("P").unwrap(),
            family,
        ];
        let report = closed_structure_suite(&m, &x, &y, &z, &universe);
        assert!(
            report.ok(),
            "{:?}",
            report.items.iter().filter(|i| !i.pass).collect::<Vec<_>>()
        );
        assert!(report.items.len() >= 10);
    }

    #[test]
    fn adjoint_pair_api_on_tree_models() {
        use crate::models::{te_adjoint_pair, IntAdd};
        let pair = te_adjoint_pair(IntAdd, 5);
        let spec_pair = AdjointPair {
            gamma: MorphismSpec {
                relation: Box::new(|a: &_| vec![pair.gamma(a)]),
                realizer: pair.gamma_realizer.clone(),
            },
            delta: MorphismSpec {
                relation: Box::new(|b: &_| vec![pair.delta(b)]),
                realizer: pair.delta_realizer.clone(),
            },
            counit: pair.counit_realizer.clone(),
            unit: pair.unit_realizer.clone(),
        };
        let a_samples = pair.t.sample(31, 4);
        let b_samples = pair.te.sample(32, 4);
        for (name, rep) in check_adjoint(&pair.t, &pair.te, &spec_pair, &a_samples, &b_samples) {
            assert!(rep.ok(), "{name}: {:?}", rep.failures);
        }
        // A corrupted preorder realizer fails with a witness.
        let broken = AdjointPair {
            counit: pair.t.distinguished("B").unwrap(),
            ..spec_pair
        };
        let results = check_adjoint(&pair.t, &pair.te, &broken, &a_samples, &b_samples);
        let counit = results
            .iter()
            .find(|(n, _)| n.contains("delta . gamma"))
            .unwrap();
        assert!(!counit.1.ok());
    }

    #[test]
    fn non_modest_tensor_witness() {
        // In the all-zero magma the pairing collapses: modest factors, but
        // every tensor point shares the single realizer.
        let n = 3;
        let mut magma = FiniteMagma::new(vec![vec![Some(0); n]; n]).unwrap();
        magma.install("P", 0);
        magma.install("L", 0);
        let x = Assembly::new(vec![("a".to_string(), vec![1]), ("b".to_string(), vec![2])])
            .unwrap();
        assert!(x.is_modest(&magma));
        let t = tensor_assembly(&magma, &x, &x).unwrap();
        assert!(!t.is_modest(&magma));
    }

    #[test]
    fn load_assembly_file_roundtrip() {
        let m = TermModel::planar();
        let text = "\
assembly X
  point a : \\x.x
  point b : \\x.\\y.x y ; \\x.\\y.\\z.x (y z)
assembly Y
  point c : \\x.x
map f : X -> Y realized \\u.\\w.u w
  a -> c
  b -> c
";
        let file = load_assembly_file(&m, text).unwrap();
        assert_eq!(file.assemblies.len(), 2);
        assert_eq!(file.maps.len(), 1);
        assert_eq!(file.assemblies["X"].len(), 2);
        assert_eq!(file.assemblies["X"].realizers("b").len(), 2);
    }
}
