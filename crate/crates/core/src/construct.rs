//! Deterministic builders for the standard splitting shapes: circular
//! splittings of knot exteriors, connected-sum composition, pattern and
//! cable splittings, satellite assembly, and the annulus chop.
//!
//! Builders emit canonical ids: the boundary suture is `K` (patterns use
//! `k` and `c`), the thin surface `R`, the thick surface `S`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::body::{BodyId, CompressionBody, Label};
use crate::complex::{Assumption, Role, SplittingComplex, Violation};
use crate::knot::expr::KnotExpr;
use crate::knot::table::KnotTable;
use crate::moves::{inflate, MoveError, MoveRecord};
use crate::surface::{
    apply_arc_surgery, boundary_sum, ArcSurgery, ComponentId, Lineage, Surface, SurfaceComponent,
    SurgeryError, SutureId, SutureKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("thick genus {genus_s} must be at least the thin genus {genus_r}")]
    ThickBelowThin { genus_s: u32, genus_r: u32 },
    #[error("winding number must be positive")]
    ZeroWinding,
    #[error("cable parameters ({p},{q}) are not coprime")]
    NotCoprime { p: u32, q: i64 },
    #[error("cable parameter p must be positive")]
    NonPositiveP,
    #[error("not a circular knot-exterior splitting: {0}")]
    NotCircularKnotComplex(String),
    #[error("not a pattern splitting over suture `{suture}` with winding {winding}: {reason}")]
    NotPatternComplex {
        suture: SutureId,
        winding: u32,
        reason: String,
    },
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("expression cannot be realized: {0}")]
    Unrealizable(String),
}

fn suture_k() -> SutureId {
    SutureId::new("K")
}

/// Circular Heegaard splitting of a knot exterior: one toroidal suture,
/// thin Seifert surface of genus `genus_r`, thick surface of genus
/// `genus_s`, one A- and one B-body. h = j = 2(genus_s - genus_r).
pub fn circular_splitting(genus_r: u32, genus_s: u32) -> Result<SplittingComplex, BuildError> {
    if genus_s < genus_r {
        return Err(BuildError::ThickBelowThin { genus_s, genus_r });
    }
    let mut c = SplittingComplex::new();
    c.add_suture(suture_k(), SutureKind::Toroidal).unwrap();
    c.insert_component(
        Role::Thin,
        ComponentId::new("R"),
        SurfaceComponent::on_suture(genus_r, &suture_k(), 1),
    )
    .unwrap();
    c.insert_component(
        Role::Thick,
        ComponentId::new("S"),
        SurfaceComponent::on_suture(genus_s, &suture_k(), 1),
    )
    .unwrap();
    c.insert_body(CompressionBody::over(
        Label::A,
        ComponentId::new("S"),
        [ComponentId::new("R")],
    ))
    .unwrap();
    c.insert_body(CompressionBody::over(
        Label::B,
        ComponentId::new("S"),
        [ComponentId::new("R")],
    ))
    .unwrap();
    debug_assert!(c.is_valid());
    Ok(c)
}

/// The single toroidal suture of a circular knot-exterior complex, with
/// shape checks: one thin and one thick component, one boundary circle
/// each, no ambient boundary.
fn knot_complex_suture(c: &SplittingComplex) -> Result<SutureId, BuildError> {
    let fail = |msg: &str| BuildError::NotCircularKnotComplex(msg.to_string());
    let mut sutures = c.sutures();
    let (suture, kind) = sutures.next().ok_or_else(|| fail("no suture"))?;
    if sutures.next().is_some() {
        return Err(fail("more than one suture"));
    }
    if kind != SutureKind::Toroidal {
        return Err(fail("suture is not toroidal"));
    }
    if c.thin().len() != 1 || c.thick().len() != 1 {
        return Err(fail("need exactly one thin and one thick component"));
    }
    if !c.boundary_plus().is_empty() || !c.boundary_minus().is_empty() {
        return Err(fail("ambient boundary surfaces present"));
    }
    for surf in [c.thin(), c.thick()] {
        let (_, comp) = surf.iter().next().unwrap();
        if comp.boundary_on(suture) != 1 || comp.total_boundary() != 1 {
            return Err(fail("surfaces must meet the suture in a single circle"));
        }
    }
    if !c.is_valid() {
        return Err(fail("complex does not validate"));
    }
    Ok(suture.clone())
}

fn remap_to_suture(comp: &SurfaceComponent, from: &SutureId, to: &SutureId) -> SurfaceComponent {
    let mut boundary = comp.boundary().clone();
    if let Some(n) = boundary.remove(from) {
        *boundary.entry(to.clone()).or_insert(0) += n;
    }
    SurfaceComponent::new(comp.genus(), boundary)
}

/// Composes circular splittings of two knot exteriors into one for their
/// connected sum: thin and thick surfaces are boundary sums, so both the
/// handle number and the handle index add exactly.
pub fn connected_sum_compose(
    ca: &SplittingComplex,
    cb: &SplittingComplex,
) -> Result<SplittingComplex, BuildError> {
    let ta = knot_complex_suture(ca)?;
    let tb = knot_complex_suture(cb)?;
    let out_suture = suture_k();

    let pick = |c: &SplittingComplex, role: Role, from: &SutureId| {
        let (_, comp) = c.surface(role).iter().next().unwrap();
        remap_to_suture(comp, from, &out_suture)
    };
    let r = boundary_sum(
        &pick(ca, Role::Thin, &ta),
        &pick(cb, Role::Thin, &tb),
        &out_suture,
    )
    .expect("one circle each");
    let s = boundary_sum(
        &pick(ca, Role::Thick, &ta),
        &pick(cb, Role::Thick, &tb),
        &out_suture,
    )
    .expect("one circle each");

    let mut out = SplittingComplex::new();
    out.add_suture(out_suture, SutureKind::Toroidal).unwrap();
    out.insert_component(Role::Thin, ComponentId::new("R"), r)
        .unwrap();
    out.insert_component(Role::Thick, ComponentId::new("S"), s)
        .unwrap();
    out.insert_body(CompressionBody::over(
        Label::A,
        ComponentId::new("S"),
        [ComponentId::new("R")],
    ))
    .unwrap();
    out.insert_body(CompressionBody::over(
        Label::B,
        ComponentId::new("S"),
        [ComponentId::new("R")],
    ))
    .unwrap();
    debug_assert!(out.is_valid());
    debug_assert_eq!(
        out.total_handle_number(),
        ca.total_handle_number() + cb.total_handle_number()
    );
    Ok(out)
}

/// Circular splitting of a pattern: the exterior of the pattern link has
/// two toroidal sutures, `k` (the pattern knot) and `c` (the companion
/// circle); thin and thick surfaces meet `k` once and `c` in `winding`
/// circles, so each body has winding+1 vertical boundary annuli.
pub fn pattern_splitting(
    genus_r: u32,
    genus_s: u32,
    winding: u32,
) -> Result<SplittingComplex, BuildError> {
    if winding == 0 {
        return Err(BuildError::ZeroWinding);
    }
    if genus_s < genus_r {
        return Err(BuildError::ThickBelowThin { genus_s, genus_r });
    }
    let k = SutureId::new("k");
    let c_sut = SutureId::new("c");
    let boundary = || {
        let mut b = BTreeMap::new();
        b.insert(k.clone(), 1);
        b.insert(c_sut.clone(), winding);
        b
    };
    let mut c = SplittingComplex::new();
    c.add_suture(k.clone(), SutureKind::Toroidal).unwrap();
    c.add_suture(c_sut.clone(), SutureKind::Toroidal).unwrap();
    c.insert_component(
        Role::Thin,
        ComponentId::new("R"),
        SurfaceComponent::new(genus_r, boundary()),
    )
    .unwrap();
    c.insert_component(
        Role::Thick,
        ComponentId::new("S"),
        SurfaceComponent::new(genus_s, boundary()),
    )
    .unwrap();
    c.insert_body(CompressionBody::over(
        Label::A,
        ComponentId::new("S"),
        [ComponentId::new("R")],
    ))
    .unwrap();
    c.insert_body(CompressionBody::over(
        Label::B,
        ComponentId::new("S"),
        [ComponentId::new("R")],
    ))
    .unwrap();
    debug_assert!(c.is_valid());
    Ok(c)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The (p,q)-cable pattern splitting. Torus knots fiber, so the splitting
/// is a fibration: thin and thick are both the fiber surface of genus
/// (p-1)(|q|-1)/2 punctured p times along the companion, and every body is
/// trivial.
pub fn cable_pattern_split(p: u32, q: i64) -> Result<SplittingComplex, BuildError> {
    if p == 0 {
        return Err(BuildError::NonPositiveP);
    }
    if gcd(u64::from(p), q.unsigned_abs()) != 1 {
        return Err(BuildError::NotCoprime { p, q });
    }
    // Seifert-fiber genus of the (p,q)-torus knot; the fiber meets the
    // companion core in p points.
    let genus = (i64::from(p) - 1) * (q.abs() - 1) / 2;
    let c = pattern_splitting(genus as u32, genus as u32, p)?;
    debug_assert!(c.is_fibration_complex());
    Ok(c)
}

/// Circular splitting of a satellite knot: inflates the companion-knot
/// splitting winding-1 times, then glues its layers into the pattern
/// splitting along the companion suture. Handle numbers add exactly.
pub fn satellite_compose(
    pattern: &SplittingComplex,
    companion: &SutureId,
    knot: &SplittingComplex,
    winding: u32,
) -> Result<SplittingComplex, BuildError> {
    if winding == 0 {
        return Err(BuildError::ZeroWinding);
    }
    let pattern_fail = |reason: &str| BuildError::NotPatternComplex {
        suture: companion.clone(),
        winding,
        reason: reason.to_string(),
    };
    if pattern.suture_kind(companion) != Some(SutureKind::Toroidal) {
        return Err(pattern_fail("companion suture missing or not toroidal"));
    }
    if pattern.sutures().count() != 2 {
        return Err(pattern_fail("pattern exterior needs exactly two sutures"));
    }
    if pattern.thin().len() != 1 || pattern.thick().len() != 1 {
        return Err(pattern_fail("need exactly one thin and one thick component"));
    }
    if !pattern.boundary_plus().is_empty() || !pattern.boundary_minus().is_empty() {
        return Err(pattern_fail("ambient boundary surfaces present"));
    }
    if !pattern.is_valid() {
        return Err(pattern_fail("complex does not validate"));
    }
    let (_, pattern_thin) = pattern.thin().iter().next().unwrap();
    let (_, pattern_thick) = pattern.thick().iter().next().unwrap();
    let outer: Vec<SutureId> = pattern
        .sutures()
        .map(|(s, _)| s.clone())
        .filter(|s| s != companion)
        .collect();
    let outer = outer.into_iter().next().expect("two sutures");
    for comp in [pattern_thin, pattern_thick] {
        if comp.boundary_on(companion) != winding || comp.boundary_on(&outer) != 1 {
            return Err(pattern_fail(
                "surfaces must meet the companion suture `winding` times and the knot suture once",
            ));
        }
    }
    knot_complex_suture(knot)?;

    // winding-1 inflations at the thin surface give `winding` parallel
    // copies of it, with the extra thick copies between them.
    let knot_thin_id = knot.thin().ids().next().unwrap().clone();
    let mut inflated = knot.clone();
    for _ in 1..winding {
        inflated = inflate(&inflated, &knot_thin_id)?.complex;
    }
    debug_assert_eq!(inflated.thin().len(), winding as usize);

    // glue along the companion suture: each layer boundary circle caps one
    // companion circle of the pattern surfaces, which stay connected
    let thin_genus: u32 = pattern_thin.genus()
        + inflated.thin().iter().map(|(_, c)| c.genus()).sum::<u32>();
    let thick_genus: u32 = pattern_thick.genus()
        + inflated
            .thick()
            .iter()
            .map(|(_, c)| c.genus())
            .sum::<u32>();

    let mut out = SplittingComplex::new();
    out.add_suture(suture_k(), SutureKind::Toroidal).unwrap();
    out.insert_component(
        Role::Thin,
        ComponentId::new("R"),
        SurfaceComponent::on_suture(thin_genus, &suture_k(), 1),
    )
    .unwrap();
    out.insert_component(
        Role::Thick,
        ComponentId::new("S"),
        SurfaceComponent::on_suture(thick_genus, &suture_k(), 1),
    )
    .unwrap();
    out.insert_body(CompressionBody::over(
        Label::A,
        ComponentId::new("S"),
        [ComponentId::new("R")],
    ))
    .unwrap();
    out.insert_body(CompressionBody::over(
        Label::B,
        ComponentId::new("S"),
        [ComponentId::new("R")],
    ))
    .unwrap();
    debug_assert!(out.is_valid());
    debug_assert_eq!(
        out.total_handle_number(),
        pattern.total_handle_number() + knot.total_handle_number()
    );
    Ok(out)
}

/// One piece a body splits into under the chop, assigned to a named part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BodyPiece {
    pub part: String,
    pub plus: ComponentId,
    pub minus: BTreeSet<ComponentId>,
}

/// Rectangle count and resulting pieces for one body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BodySplit {
    pub rectangles: u32,
    pub pieces: Vec<BodyPiece>,
}

/// Explicit chop data along a vertical annulus.
///
/// Every component's arc surgeries and every body's rectangle split are
/// declared; the apply step checks the χ ledger: each surface's arc count
/// must match the rectangle edges of its incident bodies.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChopMove {
    pub sutures_added: BTreeMap<SutureId, SutureKind>,
    pub sutures_removed: BTreeSet<SutureId>,
    /// per original component, arc surgeries in application order
    pub arcs: BTreeMap<ComponentId, Vec<ArcSurgery>>,
    /// per original body, its split; every body of the complex must appear
    pub bodies: BTreeMap<BodyId, BodySplit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChopError {
    #[error("chop requires the locally_thin assumption on the complex")]
    NotLocallyThin,
    #[error("input complex is invalid")]
    InputInvalid,
    #[error("arc plan names unknown component `{0}`")]
    UnknownComponent(ComponentId),
    #[error("body plan must cover every body exactly (missing or extra: `{0}`)")]
    BodyPlanMismatch(BodyId),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error("body `{body}`: {have} rectangles but its ∂+ carries {want} arcs")]
    PlusLedger { body: BodyId, have: u32, want: u32 },
    #[error("body `{body}`: {have} rectangles but its ∂- carries {want} arcs")]
    MinusLedger { body: BodyId, have: u32, want: u32 },
    #[error("body `{body}`: declared pieces do not cover the cut boundary exactly")]
    PiecesMismatch { body: BodyId },
    #[error("component `{0}` is shared between parts")]
    PartConflict(ComponentId),
    #[error("suture `{0}` is referenced by more than one part")]
    SutureSpansParts(SutureId),
    #[error("removed suture `{0}` still carries boundary circles")]
    SutureStillUsed(SutureId),
    #[error("duplicate suture `{0}`")]
    DuplicateSuture(SutureId),
    #[error("chopped complex is invalid ({count} violations, first: {first})")]
    ResultInvalid { first: Violation, count: usize },
    #[error("part `{0}` is invalid after extraction")]
    PartInvalid(String),
}

/// Result of an annulus chop: the combined chopped complex and its
/// partition into sub-complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChopOutcome {
    pub complex: SplittingComplex,
    pub parts: BTreeMap<String, SplittingComplex>,
    pub record: MoveRecord,
}

/// Chops a locally thin complex along a vertical annulus described by the
/// move. The handle index is conserved exactly and splits over the parts.
pub fn annulus_chop(c: &SplittingComplex, m: &ChopMove) -> Result<ChopOutcome, ChopError> {
    if !c.is_valid() {
        return Err(ChopError::InputInvalid);
    }
    if !c.assumes(Assumption::LocallyThin) {
        return Err(ChopError::NotLocallyThin);
    }

    // cut every surface component, tracking lineage and arc counts
    let mut pieces: BTreeMap<Role, Surface> = BTreeMap::new();
    let mut lineages: BTreeMap<ComponentId, Lineage> = BTreeMap::new();
    let mut arc_count: BTreeMap<ComponentId, u32> = BTreeMap::new();
    for key in m.arcs.keys() {
        if c.role_of(key).is_none() {
            return Err(ChopError::UnknownComponent(key.clone()));
        }
    }
    for role in [
        Role::Thin,
        Role::Thick,
        Role::BoundaryPlus,
        Role::BoundaryMinus,
    ] {
        let mut cut = Surface::new();
        for (id, comp) in c.surface(role).iter() {
            let plan = m.arcs.get(id).map(Vec::as_slice).unwrap_or(&[]);
            let mut surface = Surface::singleton(id.clone(), comp.clone());
            let mut lineage = Lineage::identity(&surface);
            for arc in plan {
                let (next, step) = apply_arc_surgery(&surface, arc)?;
                lineage = lineage.then(&step);
                surface = next;
            }
            arc_count.insert(id.clone(), plan.len() as u32);
            for (pid, pc) in surface.iter() {
                cut.insert(pid.clone(), pc.clone())
                    .expect("lineage ids unique");
            }
            lineages.insert(id.clone(), lineage);
        }
        pieces.insert(role, cut);
    }

    // body plan must cover the bodies exactly
    for body in c.bodies() {
        if !m.bodies.contains_key(&body.id) {
            return Err(ChopError::BodyPlanMismatch(body.id.clone()));
        }
    }
    for id in m.bodies.keys() {
        if c.body(id).is_none() {
            return Err(ChopError::BodyPlanMismatch(id.clone()));
        }
    }

    // ledger: each rectangle has one edge on ∂+ and one on ∂-
    let mut part_of_component: BTreeMap<ComponentId, String> = BTreeMap::new();
    let mut new_bodies: Vec<(String, CompressionBody)> = Vec::new();
    for body in c.bodies() {
        let split = &m.bodies[&body.id];
        let plus_arcs = arc_count[&body.plus];
        if split.rectangles != plus_arcs {
            return Err(ChopError::PlusLedger {
                body: body.id.clone(),
                have: split.rectangles,
                want: plus_arcs,
            });
        }
        let minus_arcs: u32 = body.minus.iter().map(|mc| arc_count[mc]).sum();
        if split.rectangles != minus_arcs {
            return Err(ChopError::MinusLedger {
                body: body.id.clone(),
                have: split.rectangles,
                want: minus_arcs,
            });
        }

        // pieces must partition the cut plus- and minus-sides
        let want_plus: BTreeSet<ComponentId> = lineages[&body.plus]
            .children(&body.plus)
            .iter()
            .cloned()
            .collect();
        let have_plus: BTreeSet<ComponentId> =
            split.pieces.iter().map(|p| p.plus.clone()).collect();
        let want_minus: BTreeSet<ComponentId> = body
            .minus
            .iter()
            .flat_map(|mc| lineages[mc].children(mc).iter().cloned())
            .collect();
        let mut have_minus = BTreeSet::new();
        let mut minus_total = 0usize;
        for p in &split.pieces {
            minus_total += p.minus.len();
            have_minus.extend(p.minus.iter().cloned());
        }
        if want_plus != have_plus
            || have_plus.len() != split.pieces.len()
            || want_minus != have_minus
            || minus_total != have_minus.len()
        {
            return Err(ChopError::PiecesMismatch {
                body: body.id.clone(),
            });
        }

        for p in &split.pieces {
            for cid in std::iter::once(&p.plus).chain(p.minus.iter()) {
                match part_of_component.get(cid) {
                    Some(part) if part != &p.part => {
                        return Err(ChopError::PartConflict(cid.clone()))
                    }
                    Some(_) => {}
                    None => {
                        part_of_component.insert(cid.clone(), p.part.clone());
                    }
                }
            }
            new_bodies.push((
                p.part.clone(),
                CompressionBody::over(body.label, p.plus.clone(), p.minus.clone()),
            ));
        }
    }

    // assemble the combined complex
    let mut out = SplittingComplex::new();
    for (s, kind) in c.sutures() {
        if !m.sutures_removed.contains(s) {
            out.add_suture(s.clone(), kind).unwrap();
        }
    }
    for (s, kind) in &m.sutures_added {
        out.add_suture(s.clone(), *kind)
            .map_err(|_| ChopError::DuplicateSuture(s.clone()))?;
    }
    for (role, cut) in &pieces {
        for (id, comp) in cut.iter() {
            for suture in comp.boundary().keys() {
                if m.sutures_removed.contains(suture) {
                    return Err(ChopError::SutureStillUsed(suture.clone()));
                }
            }
            out.insert_component(*role, id.clone(), comp.clone())
                .expect("piece ids unique");
        }
    }
    for (_, body) in &new_bodies {
        out.insert_body(body.clone())
            .expect("piece body ids unique");
    }

    let violations = out.validate();
    if let Some(first) = violations.first() {
        return Err(ChopError::ResultInvalid {
            first: first.clone(),
            count: violations.len(),
        });
    }
    debug_assert_eq!(out.total_handle_index(), c.total_handle_index());

    // extract the per-part sub-complexes
    let mut part_sutures: BTreeMap<SutureId, String> = BTreeMap::new();
    for (cid, part) in &part_of_component {
        let comp = out.component(cid).expect("piece inserted");
        for s in comp.boundary().keys() {
            match part_sutures.get(s) {
                Some(p) if p != part => return Err(ChopError::SutureSpansParts(s.clone())),
                Some(_) => {}
                None => {
                    part_sutures.insert(s.clone(), part.clone());
                }
            }
        }
    }
    let mut parts: BTreeMap<String, SplittingComplex> = BTreeMap::new();
    for part in part_of_component.values() {
        parts
            .entry(part.clone())
            .or_insert_with(SplittingComplex::new);
    }
    for (s, part) in &part_sutures {
        parts
            .get_mut(part)
            .unwrap()
            .add_suture(s.clone(), out.suture_kind(s).unwrap())
            .unwrap();
    }
    for role in [
        Role::Thin,
        Role::Thick,
        Role::BoundaryPlus,
        Role::BoundaryMinus,
    ] {
        for (id, comp) in out.surface(role).iter() {
            let part = &part_of_component[id];
            parts
                .get_mut(part)
                .unwrap()
                .insert_component(role, id.clone(), comp.clone())
                .expect("unique in part");
        }
    }
    for (part, body) in &new_bodies {
        parts
            .get_mut(part)
            .unwrap()
            .insert_body(body.clone())
            .expect("unique in part");
    }
    for (name, part) in &parts {
        if !part.is_valid() {
            return Err(ChopError::PartInvalid(name.clone()));
        }
    }
    debug_assert_eq!(
        parts.values().map(|p| p.total_handle_index()).sum::<i64>(),
        c.total_handle_index()
    );

    let rectangles: u32 = m.bodies.values().map(|s| s.rectangles).sum();
    let part_names: Vec<String> = parts.keys().cloned().collect();
    let record = MoveRecord {
        kind: "chop",
        params: format!("rectangles={};parts={}", rectangles, part_names.join(",")),
        h_before: c.total_handle_number(),
        h_after: out.total_handle_number(),
        j_before: c.total_handle_index(),
        j_after: out.total_handle_index(),
    };
    Ok(ChopOutcome {
        complex: out,
        parts,
        record,
    })
}

/// Identity chop plan: zero rectangles, every body kept whole in one part.
pub fn identity_chop(c: &SplittingComplex, part: &str) -> ChopMove {
    let mut m = ChopMove::default();
    for body in c.bodies() {
        m.bodies.insert(
            body.id.clone(),
            BodySplit {
                rectangles: 0,
                pieces: vec![BodyPiece {
                    part: part.to_string(),
                    plus: body.plus.clone(),
                    minus: body.minus.clone(),
                }],
            },
        );
    }
    m
}

/// Builds the splitting complex an expression describes, using splittings
/// that realize each table entry's handle number: connected sums compose,
/// cables wrap in the fibered cable pattern, satellites wrap in a pattern
/// splitting of matching handle number. The resulting total handle number
/// equals the evaluator's upper bound.
pub fn realize_expression(
    expr: &KnotExpr,
    table: &KnotTable,
) -> Result<SplittingComplex, BuildError> {
    let splitting_for = |h: i64, what: &str| -> Result<SplittingComplex, BuildError> {
        if h < 0 || h % 2 != 0 {
            return Err(BuildError::Unrealizable(format!(
                "{} has handle number {} (need an even value)",
                what, h
            )));
        }
        circular_splitting(1, 1 + (h / 2) as u32)
    };
    match expr {
        KnotExpr::Atom(name) => {
            let record = table
                .knot(name)
                .ok_or_else(|| BuildError::Unrealizable(format!("unknown knot `{}`", name)))?;
            let h = record.handle.exact_value().ok_or_else(|| {
                BuildError::Unrealizable(format!("knot `{}` has an inexact handle number", name))
            })?;
            splitting_for(i64::from(h), &format!("knot `{}`", name))
        }
        KnotExpr::Sum(left, right) => {
            let a = realize_expression(left, table)?;
            let b = realize_expression(right, table)?;
            connected_sum_compose(&a, &b)
        }
        KnotExpr::Cable { p, q, inner } => {
            let pattern = cable_pattern_split(*p, *q)?;
            let base = realize_expression(inner, table)?;
            satellite_compose(&pattern, &SutureId::new("c"), &base, *p)
        }
        KnotExpr::Satellite {
            pattern,
            winding,
            inner,
        } => {
            let record = table
                .pattern(pattern)
                .ok_or_else(|| BuildError::Unrealizable(format!("unknown pattern `{}`", pattern)))?;
            let h = record.handle.upper_finite().ok_or_else(|| {
                BuildError::Unrealizable(format!("pattern `{}` has no finite bound", pattern))
            })?;
            if h % 2 != 0 {
                return Err(BuildError::Unrealizable(format!(
                    "pattern `{}` has odd handle bound {}",
                    pattern, h
                )));
            }
            let p = pattern_splitting(1, 1 + (h / 2), *winding)?;
            let base = realize_expression(inner, table)?;
            satellite_compose(&p, &SutureId::new("c"), &base, *winding)
        }
    }
}
