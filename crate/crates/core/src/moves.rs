//! Rewrite moves on splitting complexes: amalgamation, weak reduction,
//! inflation/deflation, stabilization/destabilization.
//!
//! Moves never mutate their input; each returns a fresh complex plus a
//! [`MoveRecord`] for provenance traces. Move data is fully explicit
//! (disk kinds, partitions, wiring): disk existence is a geometric fact
//! the caller asserts by supplying the move.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::body::{CompressionBody, Label};
use crate::complex::{Assumption, Role, SplittingComplex, Violation};
use crate::surface::{
    apply_disk_surgery, boundary_union, BoundaryMap, ComponentId, DiskSurgery, Lineage, Surface,
    SurfaceComponent, SurgeryError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub kind: &'static str,
    pub params: String,
    pub h_before: i64,
    pub h_after: i64,
    pub j_before: i64,
    pub j_after: i64,
}

impl MoveRecord {
    /// Canonical single-line form, appended to `.ghs` trace files.
    pub fn to_line(&self) -> String {
        format!(
            "MOVE|{}|{}|h:{}->{}|j:{}->{}",
            self.kind, self.params, self.h_before, self.h_after, self.j_before, self.j_after
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveOutcome {
    pub complex: SplittingComplex,
    pub record: MoveRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("input complex is invalid ({count} violations, first: {first})")]
    InputInvalid { first: Violation, count: usize },
    #[error("`{0}` is not a thin component")]
    NotThin(ComponentId),
    #[error("`{0}` is not a thick component")]
    NotThick(ComponentId),
    #[error("amalgamation set must be non-empty")]
    EmptyThinSet,
    #[error("amalgamation set does not lie between a single B-body and a single A-body")]
    MixedBodies,
    #[error("self-amalgamation rejected: both sides of `{0}` belong to the same thick component")]
    SelfAmalgamation(ComponentId),
    #[error("amalgamation set is a proper subset of the common boundary of the two bodies; inflate the extra components first")]
    PartialIntersection,
    #[error("amalgamated surface genus would be negative")]
    BadAmalgamationArithmetic,
    #[error("weak reduction requires both bodies over `{0}` to be non-trivial")]
    TrivialSide(ComponentId),
    #[error("complex is asserted strongly irreducible; weak reduction contradicts the assertion")]
    AssertedStronglyIrreducible,
    #[error("disk system {0} must contain at least one disk")]
    EmptyDiskSystem(Label),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error("side-two groups must partition the new thin components")]
    GroupsNotPartition,
    #[error("side-two tube budget is {have} but the A-side has {want} disks")]
    TubeBudget { have: u32, want: u32 },
    #[error("declared surgeries and groups would reassemble the thick surface into {0} pieces instead of one")]
    DisconnectedReassembly(usize),
    #[error("outer boundary assignment must cover ∂- of the old {0}-body exactly")]
    OuterAssignment(Label),
    #[error("assignment target `{0}` is not among the produced components")]
    BadAssignmentTarget(ComponentId),
    #[error("deflate requires both bodies over `{0}` to be trivial products")]
    DeflateNonTrivialPair(ComponentId),
    #[error("deflate pair `{thick}` / `{thin}` is not adjacent")]
    DeflateNotAdjacent {
        thick: ComponentId,
        thin: ComponentId,
    },
    #[error("cannot deflate the last layer of a circular splitting")]
    DeflateLastLayer,
    #[error("destabilize requires genus >= 1 on `{0}`")]
    DestabilizeGenus(ComponentId),
    #[error("move produced an invalid complex ({count} violations, first: {first})")]
    ResultInvalid { first: Violation, count: usize },
}

fn require_valid(c: &SplittingComplex) -> Result<(), MoveError> {
    let violations = c.validate();
    match violations.first() {
        None => Ok(()),
        Some(first) => Err(MoveError::InputInvalid {
            first: first.clone(),
            count: violations.len(),
        }),
    }
}

fn finalize(
    out: SplittingComplex,
    kind: &'static str,
    params: String,
    before: (i64, i64),
) -> Result<MoveOutcome, MoveError> {
    let violations = out.validate();
    if let Some(first) = violations.first() {
        return Err(MoveError::ResultInvalid {
            first: first.clone(),
            count: violations.len(),
        });
    }
    let record = MoveRecord {
        kind,
        params,
        h_before: before.0,
        h_after: out.total_handle_number(),
        j_before: before.1,
        j_after: out.total_handle_index(),
    };
    Ok(MoveOutcome {
        complex: out,
        record,
    })
}

fn totals(c: &SplittingComplex) -> (i64, i64) {
    (c.total_handle_number(), c.total_handle_index())
}

fn ids_csv(ids: impl IntoIterator<Item = ComponentId>) -> String {
    let mut out = String::new();
    for (i, id) in ids.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}", id);
    }
    out
}

/// Merges the two splittings adjacent across `thin_set` into one.
///
/// `thin_set` must be exactly the set of common ∂- components of the
/// B-body below it and the A-body above it; amalgamating along a proper
/// subset requires inflating the others away first.
pub fn amalgamate(
    c: &SplittingComplex,
    thin_set: &BTreeSet<ComponentId>,
) -> Result<MoveOutcome, MoveError> {
    require_valid(c)?;
    if thin_set.is_empty() {
        return Err(MoveError::EmptyThinSet);
    }
    for r in thin_set {
        if c.role_of(r) != Some(Role::Thin) {
            return Err(MoveError::NotThin(r.clone()));
        }
    }

    let mut b_bodies = BTreeSet::new();
    let mut a_bodies = BTreeSet::new();
    for r in thin_set {
        b_bodies.insert(c.body_under(r, Label::B).expect("valid complex").id.clone());
        a_bodies.insert(c.body_under(r, Label::A).expect("valid complex").id.clone());
    }
    if b_bodies.len() != 1 || a_bodies.len() != 1 {
        return Err(MoveError::MixedBodies);
    }
    let body_b1 = c.body(b_bodies.iter().next().unwrap()).unwrap().clone();
    let body_a2 = c.body(a_bodies.iter().next().unwrap()).unwrap().clone();
    let thick1 = body_b1.plus.clone();
    let thick2 = body_a2.plus.clone();
    if thick1 == thick2 {
        return Err(MoveError::SelfAmalgamation(
            thin_set.iter().next().unwrap().clone(),
        ));
    }

    // common boundary must be consumed in full
    let common: BTreeSet<_> = body_b1
        .minus
        .intersection(&body_a2.minus)
        .cloned()
        .collect();
    if &common != thin_set {
        return Err(MoveError::PartialIntersection);
    }

    let body_a1 = c.body_over(&thick1, Label::A).expect("valid complex").clone();
    let body_b2 = c.body_over(&thick2, Label::B).expect("valid complex").clone();

    let s1 = c.thick().get(&thick1).unwrap();
    let s2 = c.thick().get(&thick2).unwrap();
    let r_genus: u32 = thin_set
        .iter()
        .map(|r| c.thin().get(r).unwrap().genus())
        .sum();
    let r_boundary = thin_set.iter().fold(BoundaryMap::new(), |acc, r| {
        boundary_union(&acc, c.thin().get(r).unwrap().boundary())
    });
    let k = thin_set.len() as i64;

    // g(S') = g(S1) + g(S2) - g(R) + (#R - 1); per suture
    // b(S') = b(S1) + b(S2) - b(R). Both forced by χ bookkeeping.
    let genus = i64::from(s1.genus()) + i64::from(s2.genus()) - i64::from(r_genus) + (k - 1);
    if genus < 0 {
        return Err(MoveError::BadAmalgamationArithmetic);
    }
    let mut boundary = boundary_union(s1.boundary(), s2.boundary());
    for (s, n) in &r_boundary {
        let slot = boundary.get_mut(s).filter(|have| **have >= *n);
        match slot {
            Some(have) => *have -= n,
            None => return Err(MoveError::BadAmalgamationArithmetic),
        }
    }
    boundary.retain(|_, n| *n > 0);
    let merged = SurfaceComponent::new(genus as u32, boundary);
    debug_assert_eq!(
        merged.euler_char(),
        s1.euler_char() + s2.euler_char()
            - thin_set
                .iter()
                .map(|r| c.thin().get(r).unwrap().euler_char())
                .sum::<i64>()
    );

    let before = totals(c);

    let mut out = c.clone();
    for r in thin_set {
        out.remove_component(Role::Thin, r);
    }
    out.remove_component(Role::Thick, &thick1);
    out.remove_component(Role::Thick, &thick2);
    for id in [&body_a1.id, &body_b1.id, &body_a2.id, &body_b2.id] {
        out.remove_body(id);
    }
    let mut new_thick = ComponentId::new(format!("{}+{}", thick1, thick2));
    while out.role_of(&new_thick).is_some() {
        new_thick = new_thick.suffixed("'");
    }
    out.insert_component(Role::Thick, new_thick.clone(), merged)
        .expect("freshened id");

    // ∂-A' = ∂-A1 ∪ (∂-A2 - R); ∂-B' = ∂-B2 ∪ (∂-B1 - R)
    let minus_a: BTreeSet<_> = body_a1
        .minus
        .iter()
        .chain(body_a2.minus.difference(thin_set))
        .cloned()
        .collect();
    let minus_b: BTreeSet<_> = body_b2
        .minus
        .iter()
        .chain(body_b1.minus.difference(thin_set))
        .cloned()
        .collect();
    out.insert_body(CompressionBody::over(Label::A, new_thick.clone(), minus_a))
        .expect("fresh body id");
    out.insert_body(CompressionBody::over(Label::B, new_thick.clone(), minus_b))
        .expect("fresh body id");

    out.drop_assumption(Assumption::StronglyIrreducible);
    out.drop_assumption(Assumption::LocallyThin);

    let params = format!("thin={};new={}", ids_csv(thin_set.iter().cloned()), new_thick);
    let outcome = finalize(out, "amalgamate", params, before)?;
    debug_assert_eq!(outcome.record.j_before, outcome.record.j_after);
    Ok(outcome)
}

/// One group of the side-two assembly: the new thin components it contains
/// and how many extra tubes (beyond a spanning tree) sit inside it. A group
/// with `k` members and `e` extra genus consumes `k - 1 + e` tubes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideTwoGroup {
    pub id: ComponentId,
    pub members: BTreeSet<ComponentId>,
    pub extra_genus: u32,
}

/// Fully explicit weak-reduction data for one thick component.
///
/// `disks_a` applies in order to the thick surface (component ids follow
/// the lineage, starting from the thick id). `disks_b` applies after the
/// A-side, in declared order, to the resulting surface. Components of the
/// side-one thick surface get suffix `:1`, new thin components suffix `:0`;
/// the side-two thick components are the declared groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakReductionMove {
    pub thick: ComponentId,
    pub disks_a: Vec<DiskSurgery>,
    pub disks_b: Vec<DiskSurgery>,
    pub side_two: Vec<SideTwoGroup>,
    /// old ∂- component of the A-body -> side-one component (raw lineage id)
    pub outer_a: BTreeMap<ComponentId, ComponentId>,
    /// old ∂- component of the B-body -> side-two group id
    pub outer_b: BTreeMap<ComponentId, ComponentId>,
    /// asserts the new thin surface is incompressible
    pub maximal: bool,
}

fn apply_disks(
    surface: &Surface,
    disks: &[DiskSurgery],
) -> Result<(Surface, Lineage), SurgeryError> {
    let mut cur = surface.clone();
    let mut lineage = Lineage::identity(surface);
    for d in disks {
        let (next, step) = apply_disk_surgery(&cur, d)?;
        lineage = lineage.then(&step);
        cur = next;
    }
    Ok((cur, lineage))
}

/// Union-find check that the phase-two siblings plus the declared groups
/// reconnect all new thin components into a single surface.
fn reassembly_components(
    r_ids: &[ComponentId],
    cliques: impl Iterator<Item = Vec<ComponentId>>,
) -> usize {
    let index: BTreeMap<&ComponentId, usize> =
        r_ids.iter().enumerate().map(|(i, id)| (id, i)).collect();
    let mut parent: Vec<usize> = (0..r_ids.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for clique in cliques {
        let mut ids = clique.iter().filter_map(|id| index.get(id).copied());
        if let Some(first) = ids.next() {
            let root = find(&mut parent, first);
            for other in ids {
                let r = find(&mut parent, other);
                parent[r] = root;
            }
        }
    }
    (0..r_ids.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

/// Replaces a thick component by two thinner thick surfaces and a new thin
/// surface between them, rewiring the four produced body families.
pub fn weak_reduce(
    c: &SplittingComplex,
    m: &WeakReductionMove,
) -> Result<MoveOutcome, MoveError> {
    require_valid(c)?;
    if c.assumes(Assumption::StronglyIrreducible) {
        return Err(MoveError::AssertedStronglyIrreducible);
    }
    let thick = c
        .thick()
        .get(&m.thick)
        .ok_or_else(|| MoveError::NotThick(m.thick.clone()))?
        .clone();
    let body_a = c.body_over(&m.thick, Label::A).expect("valid complex").clone();
    let body_b = c.body_over(&m.thick, Label::B).expect("valid complex").clone();
    for body in [&body_a, &body_b] {
        if c.body_shape(body).expect("valid complex").is_trivial() {
            return Err(MoveError::TrivialSide(m.thick.clone()));
        }
    }
    if m.disks_a.is_empty() {
        return Err(MoveError::EmptyDiskSystem(Label::A));
    }
    if m.disks_b.is_empty() {
        return Err(MoveError::EmptyDiskSystem(Label::B));
    }
    let a = m.disks_a.len() as i64;
    let b = m.disks_b.len() as i64;

    let start = Surface::singleton(m.thick.clone(), thick.clone());
    let (side_one, _lineage_a) = apply_disks(&start, &m.disks_a)?;
    let (new_thin, lineage_b) = apply_disks(&side_one, &m.disks_b)?;
    debug_assert_eq!(side_one.euler_char(), thick.euler_char() + 2 * a);
    debug_assert_eq!(new_thin.euler_char(), thick.euler_char() + 2 * (a + b));

    // side-two groups must partition the new thin components
    let r_ids: Vec<ComponentId> = new_thin.ids().cloned().collect();
    let mut seen = BTreeSet::new();
    for g in &m.side_two {
        for member in &g.members {
            if !new_thin.contains(member) || !seen.insert(member.clone()) {
                return Err(MoveError::GroupsNotPartition);
            }
        }
        if g.members.is_empty() {
            return Err(MoveError::GroupsNotPartition);
        }
    }
    if seen.len() != r_ids.len() {
        return Err(MoveError::GroupsNotPartition);
    }
    // tube budget: every inverted A-disk is one tube
    let budget: u32 = m
        .side_two
        .iter()
        .map(|g| (g.members.len() as u32 - 1) + g.extra_genus)
        .sum();
    if i64::from(budget) != a {
        return Err(MoveError::TubeBudget {
            have: budget,
            want: a as u32,
        });
    }
    // the tubes of both sides must reconnect everything into one surface
    let phase_two_cliques = side_one
        .ids()
        .map(|x| lineage_b.children(x).to_vec())
        .collect::<Vec<_>>();
    let group_cliques = m
        .side_two
        .iter()
        .map(|g| g.members.iter().cloned().collect::<Vec<_>>());
    let pieces = reassembly_components(
        &r_ids,
        phase_two_cliques.into_iter().chain(group_cliques),
    );
    if pieces != 1 {
        return Err(MoveError::DisconnectedReassembly(pieces));
    }

    // outer assignments cover the old ∂- sets exactly
    let keys_a: BTreeSet<_> = m.outer_a.keys().cloned().collect();
    if keys_a != body_a.minus {
        return Err(MoveError::OuterAssignment(Label::A));
    }
    for target in m.outer_a.values() {
        if !side_one.contains(target) {
            return Err(MoveError::BadAssignmentTarget(target.clone()));
        }
    }
    let keys_b: BTreeSet<_> = m.outer_b.keys().cloned().collect();
    if keys_b != body_b.minus {
        return Err(MoveError::OuterAssignment(Label::B));
    }
    let group_ids: BTreeSet<_> = m.side_two.iter().map(|g| g.id.clone()).collect();
    if group_ids.len() != m.side_two.len() {
        return Err(MoveError::GroupsNotPartition);
    }
    for target in m.outer_b.values() {
        if !group_ids.contains(target) {
            return Err(MoveError::BadAssignmentTarget(target.clone()));
        }
    }

    let before = totals(c);
    let mut out = c.clone();
    out.remove_component(Role::Thick, &m.thick);
    out.remove_body(&body_a.id);
    out.remove_body(&body_b.id);

    let s1_id = |x: &ComponentId| x.suffixed(":1");
    let r_id = |y: &ComponentId| y.suffixed(":0");

    for (x, comp) in side_one.iter() {
        out.insert_component(Role::Thick, s1_id(x), comp.clone())
            .map_err(|_| MoveError::BadAssignmentTarget(s1_id(x)))?;
    }
    for (y, comp) in new_thin.iter() {
        out.insert_component(Role::Thin, r_id(y), comp.clone())
            .map_err(|_| MoveError::BadAssignmentTarget(r_id(y)))?;
    }
    for g in &m.side_two {
        let genus: u32 = g
            .members
            .iter()
            .map(|y| new_thin.get(y).unwrap().genus())
            .sum::<u32>()
            + g.extra_genus;
        let boundary = g.members.iter().fold(BoundaryMap::new(), |acc, y| {
            boundary_union(&acc, new_thin.get(y).unwrap().boundary())
        });
        out.insert_component(Role::Thick, g.id.clone(), SurfaceComponent::new(genus, boundary))
            .map_err(|_| MoveError::BadAssignmentTarget(g.id.clone()))?;
    }

    // inner bodies follow the lineage; outer bodies follow the assignment
    for (x, _) in side_one.iter() {
        let new_a_minus: BTreeSet<_> = m
            .outer_a
            .iter()
            .filter(|(_, target)| *target == x)
            .map(|(old, _)| old.clone())
            .collect();
        out.insert_body(CompressionBody::over(Label::A, s1_id(x), new_a_minus))
            .expect("fresh body id");
        let descend: BTreeSet<_> = lineage_b.children(x).iter().map(r_id).collect();
        out.insert_body(CompressionBody::over(Label::B, s1_id(x), descend))
            .expect("fresh body id");
    }
    for g in &m.side_two {
        let members: BTreeSet<_> = g.members.iter().map(r_id).collect();
        out.insert_body(CompressionBody::over(Label::A, g.id.clone(), members))
            .expect("fresh body id");
        let new_b_minus: BTreeSet<_> = m
            .outer_b
            .iter()
            .filter(|(_, target)| *target == &g.id)
            .map(|(old, _)| old.clone())
            .collect();
        out.insert_body(CompressionBody::over(Label::B, g.id.clone(), new_b_minus))
            .expect("fresh body id");
    }

    let thin_incompressible =
        (c.assumes(Assumption::ThinIncompressible) || c.thin().is_empty()) && m.maximal;
    out.drop_assumption(Assumption::StronglyIrreducible);
    out.drop_assumption(Assumption::LocallyThin);
    if thin_incompressible {
        out.assume(Assumption::ThinIncompressible);
    } else {
        out.drop_assumption(Assumption::ThinIncompressible);
    }

    let params = format!("thick={};a={};b={};maximal={}", m.thick, a, b, m.maximal);
    let outcome = finalize(out, "weak-reduce", params, before)?;
    debug_assert_eq!(outcome.record.j_before, outcome.record.j_after);
    Ok(outcome)
}

/// The component ids a weak reduction of `thick` produces for its new thin
/// surface, given the move that was applied.
pub fn weak_reduction_thin_ids(
    c: &SplittingComplex,
    m: &WeakReductionMove,
) -> Result<BTreeSet<ComponentId>, MoveError> {
    let thick = c
        .thick()
        .get(&m.thick)
        .ok_or_else(|| MoveError::NotThick(m.thick.clone()))?
        .clone();
    let start = Surface::singleton(m.thick.clone(), thick);
    let (side_one, _) = apply_disks(&start, &m.disks_a)?;
    let (new_thin, _) = apply_disks(&side_one, &m.disks_b)?;
    Ok(new_thin.ids().map(|y| y.suffixed(":0")).collect())
}

fn fresh_inflation_ids(c: &SplittingComplex, r: &ComponentId) -> (ComponentId, ComponentId) {
    for n in 1.. {
        let thick = r.suffixed(&format!(":t{}", n));
        let thin = r.suffixed(&format!(":c{}", n));
        if c.role_of(&thick).is_none() && c.role_of(&thin).is_none() {
            return (thick, thin);
        }
    }
    unreachable!()
}

/// Inserts a product layer at a thin component: one thick copy, one thin
/// copy, and two trivial bodies. Handle totals are unchanged.
pub fn inflate(c: &SplittingComplex, r: &ComponentId) -> Result<MoveOutcome, MoveError> {
    require_valid(c)?;
    if c.role_of(r) != Some(Role::Thin) {
        return Err(MoveError::NotThin(r.clone()));
    }
    let data = c.thin().get(r).unwrap().clone();
    let upper_a = c.body_under(r, Label::A).expect("valid complex").id.clone();
    let (thick_id, thin_id) = fresh_inflation_ids(c, r);

    let before = totals(c);
    let mut out = c.clone();
    out.insert_component(Role::Thick, thick_id.clone(), data.clone())
        .expect("fresh id");
    out.insert_component(Role::Thin, thin_id.clone(), data)
        .expect("fresh id");
    {
        let body = out.body_mut(&upper_a).unwrap();
        body.minus.remove(r);
        body.minus.insert(thin_id.clone());
    }
    out.insert_body(CompressionBody::over(
        Label::A,
        thick_id.clone(),
        [r.clone()],
    ))
    .expect("fresh body id");
    out.insert_body(CompressionBody::over(
        Label::B,
        thick_id.clone(),
        [thin_id.clone()],
    ))
    .expect("fresh body id");

    let params = format!("thin={};new-thick={};new-thin={}", r, thick_id, thin_id);
    let outcome = finalize(out, "inflate", params, before)?;
    debug_assert_eq!(outcome.record.h_before, outcome.record.h_after);
    debug_assert_eq!(outcome.record.j_before, outcome.record.j_after);
    Ok(outcome)
}

/// Removes a product layer: the thick/thin pair must bound two trivial
/// bodies. Exact inverse of [`inflate`].
pub fn deflate(
    c: &SplittingComplex,
    thick_id: &ComponentId,
    thin_id: &ComponentId,
) -> Result<MoveOutcome, MoveError> {
    require_valid(c)?;
    if c.role_of(thick_id) != Some(Role::Thick) {
        return Err(MoveError::NotThick(thick_id.clone()));
    }
    if c.role_of(thin_id) != Some(Role::Thin) {
        return Err(MoveError::NotThin(thin_id.clone()));
    }
    let body_a = c.body_over(thick_id, Label::A).expect("valid complex").clone();
    let body_b = c.body_over(thick_id, Label::B).expect("valid complex").clone();
    for body in [&body_a, &body_b] {
        let shape = c.body_shape(body).expect("valid complex");
        if !shape.is_trivial() {
            return Err(MoveError::DeflateNonTrivialPair(thick_id.clone()));
        }
    }
    // trivial bodies have exactly one ∂- component each
    let below = body_a.minus.iter().next().unwrap().clone();
    let above = body_b.minus.iter().next().unwrap().clone();
    if below == above {
        return Err(MoveError::DeflateLastLayer);
    }
    let (kept, rewire_label) = if *thin_id == above {
        (below, Label::A) // the removed thin sat above the layer
    } else if *thin_id == below {
        (above, Label::B)
    } else {
        return Err(MoveError::DeflateNotAdjacent {
            thick: thick_id.clone(),
            thin: thin_id.clone(),
        });
    };
    let other_body = c
        .body_under(thin_id, rewire_label)
        .expect("valid complex")
        .id
        .clone();

    let before = totals(c);
    let mut out = c.clone();
    out.remove_component(Role::Thick, thick_id);
    out.remove_component(Role::Thin, thin_id);
    out.remove_body(&body_a.id);
    out.remove_body(&body_b.id);
    {
        let body = out.body_mut(&other_body).unwrap();
        body.minus.remove(thin_id);
        body.minus.insert(kept);
    }

    let params = format!("thick={};thin={}", thick_id, thin_id);
    let outcome = finalize(out, "deflate", params, before)?;
    debug_assert_eq!(outcome.record.h_before, outcome.record.h_after);
    debug_assert_eq!(outcome.record.j_before, outcome.record.j_after);
    Ok(outcome)
}

/// Adds a trivial handle pair to a thick surface: genus +1, both incident
/// bodies gain one handle, the handle index total grows by exactly 2.
pub fn stabilize(c: &SplittingComplex, thick_id: &ComponentId) -> Result<MoveOutcome, MoveError> {
    require_valid(c)?;
    let comp = c
        .thick()
        .get(thick_id)
        .ok_or_else(|| MoveError::NotThick(thick_id.clone()))?
        .clone();
    let before = totals(c);
    let mut out = c.clone();
    let bumped = SurfaceComponent::new(comp.genus() + 1, comp.boundary().clone());
    out.update_component(Role::Thick, thick_id, bumped)
        .expect("component present");
    out.drop_assumption(Assumption::StronglyIrreducible);
    out.drop_assumption(Assumption::LocallyThin);

    let params = format!("thick={}", thick_id);
    let outcome = finalize(out, "stabilize", params, before)?;
    debug_assert_eq!(outcome.record.j_after, outcome.record.j_before + 2);
    Ok(outcome)
}

/// Inverse of [`stabilize`]: genus -1. The caller asserts the splitting is
/// stabilized; the move fails if a body would become invalid.
pub fn destabilize(c: &SplittingComplex, thick_id: &ComponentId) -> Result<MoveOutcome, MoveError> {
    require_valid(c)?;
    let comp = c
        .thick()
        .get(thick_id)
        .ok_or_else(|| MoveError::NotThick(thick_id.clone()))?
        .clone();
    if comp.genus() == 0 {
        return Err(MoveError::DestabilizeGenus(thick_id.clone()));
    }
    let before = totals(c);
    let mut out = c.clone();
    let dropped = SurfaceComponent::new(comp.genus() - 1, comp.boundary().clone());
    out.update_component(Role::Thick, thick_id, dropped)
        .expect("component present");

    let params = format!("thick={}", thick_id);
    let outcome = finalize(out, "destabilize", params, before)?;
    debug_assert_eq!(outcome.record.j_after, outcome.record.j_before - 2);
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{DiskSurgeryKind, SplitSpec, SutureId, SutureKind};

    fn t() -> SutureId {
        SutureId::new("T")
    }

    /// One-suture circular splitting: thin (gr,1), thick (gs,1).
    fn circular(gr: u32, gs: u32) -> SplittingComplex {
        let mut c = SplittingComplex::new();
        c.add_suture(t(), SutureKind::Toroidal).unwrap();
        c.insert_component(
            Role::Thin,
            ComponentId::new("R"),
            SurfaceComponent::on_suture(gr, &t(), 1),
        )
        .unwrap();
        c.insert_component(
            Role::Thick,
            ComponentId::new("S"),
            SurfaceComponent::on_suture(gs, &t(), 1),
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
        assert!(c.is_valid());
        c
    }

    fn simple_weak_reduction(thick: &str) -> WeakReductionMove {
        let thick = ComponentId::new(thick);
        WeakReductionMove {
            thick: thick.clone(),
            disks_a: vec![DiskSurgery {
                target: thick.clone(),
                kind: DiskSurgeryKind::NonSeparating,
            }],
            disks_b: vec![DiskSurgery {
                target: thick.clone(),
                kind: DiskSurgeryKind::NonSeparating,
            }],
            side_two: vec![SideTwoGroup {
                id: thick.suffixed(":2"),
                members: [thick.clone()].into_iter().collect(),
                extra_genus: 1,
            }],
            outer_a: [(ComponentId::new("R"), thick.clone())].into_iter().collect(),
            outer_b: [(ComponentId::new("R"), thick.suffixed(":2"))]
                .into_iter()
                .collect(),
            maximal: false,
        }
    }

    #[test]
    fn weak_reduce_genus_3_example() {
        // S=(3,1), one non-separating disk each side:
        // S1=(2,1), S2=(2,1), R=(1,1); χ ledger forced.
        let c = circular(1, 3);
        let m = simple_weak_reduction("S");
        let out = weak_reduce(&c, &m).unwrap();
        let cx = &out.complex;
        assert!(cx.is_valid());
        assert_eq!(
            cx.thick().get(&ComponentId::new("S:1")).unwrap().genus(),
            2
        );
        assert_eq!(
            cx.thick().get(&ComponentId::new("S:2")).unwrap().genus(),
            2
        );
        assert_eq!(cx.thin().get(&ComponentId::new("S:0")).unwrap().genus(), 1);
        assert_eq!(out.record.j_before, 4);
        assert_eq!(out.record.j_after, 4);
        assert_eq!(out.record.h_after, 4);
    }

    #[test]
    fn weak_reduce_then_amalgamate_round_trip() {
        let c = circular(1, 3);
        let m = simple_weak_reduction("S");
        let reduced = weak_reduce(&c, &m).unwrap().complex;
        let thin_new = weak_reduction_thin_ids(&c, &m).unwrap();
        let back = amalgamate(&reduced, &thin_new).unwrap();
        assert_eq!(back.complex.thick_data(), c.thick_data());
        assert_eq!(back.record.j_after, c.total_handle_index());
    }

    #[test]
    fn weak_reduce_needs_nontrivial_sides() {
        let c = circular(1, 1); // fibration, both bodies trivial
        let m = simple_weak_reduction("S");
        assert!(matches!(
            weak_reduce(&c, &m),
            Err(MoveError::TrivialSide(_))
        ));
    }

    #[test]
    fn weak_reduce_respects_strong_irreducibility_flag() {
        let c = circular(1, 3).with_assumption(Assumption::StronglyIrreducible);
        let m = simple_weak_reduction("S");
        assert!(matches!(
            weak_reduce(&c, &m),
            Err(MoveError::AssertedStronglyIrreducible)
        ));
    }

    #[test]
    fn weak_reduce_tube_budget_checked() {
        let c = circular(1, 3);
        let mut m = simple_weak_reduction("S");
        m.side_two[0].extra_genus = 0; // budget 0 != a=1
        assert!(matches!(
            weak_reduce(&c, &m),
            Err(MoveError::TubeBudget { have: 0, want: 1 })
        ));
    }

    #[test]
    fn weak_reduce_disconnected_reassembly_rejected() {
        // separating A-disk whose closed side is never re-joined by the
        // groups: the thick surface cannot have been connected.
        let c = circular(1, 4);
        let s = ComponentId::new("S");
        let m = WeakReductionMove {
            thick: s.clone(),
            disks_a: vec![DiskSurgery {
                target: s.clone(),
                kind: DiskSurgeryKind::Separating {
                    left: SplitSpec::on_suture(1, &t(), 0),
                    right: SplitSpec::on_suture(3, &t(), 1),
                },
            }],
            disks_b: vec![DiskSurgery {
                target: ComponentId::new("S.r"),
                kind: DiskSurgeryKind::NonSeparating,
            }],
            side_two: vec![
                SideTwoGroup {
                    id: ComponentId::new("X"),
                    members: [ComponentId::new("S.l")].into_iter().collect(),
                    extra_genus: 1,
                },
                SideTwoGroup {
                    id: ComponentId::new("Y"),
                    members: [ComponentId::new("S.r")].into_iter().collect(),
                    extra_genus: 0,
                },
            ],
            outer_a: [(ComponentId::new("R"), ComponentId::new("S.r"))]
                .into_iter()
                .collect(),
            outer_b: [(ComponentId::new("R"), ComponentId::new("Y"))]
                .into_iter()
                .collect(),
            maximal: false,
        };
        assert!(matches!(
            weak_reduce(&c, &m),
            Err(MoveError::DisconnectedReassembly(2))
        ));
    }

    #[test]
    fn amalgamate_example_surfaces() {
        // S1=(2,1), S2=(1,1), R=(1,1) -> S'=(2,1)
        let c = circular(1, 2);
        let m = WeakReductionMove {
            thick: ComponentId::new("S"),
            disks_a: vec![DiskSurgery {
                target: ComponentId::new("S"),
                kind: DiskSurgeryKind::NonSeparating,
            }],
            disks_b: vec![DiskSurgery {
                target: ComponentId::new("S"),
                kind: DiskSurgeryKind::NonSeparating,
            }],
            side_two: vec![SideTwoGroup {
                id: ComponentId::new("S:2"),
                members: [ComponentId::new("S")].into_iter().collect(),
                extra_genus: 1,
            }],
            outer_a: [(ComponentId::new("R"), ComponentId::new("S"))]
                .into_iter()
                .collect(),
            outer_b: [(ComponentId::new("R"), ComponentId::new("S:2"))]
                .into_iter()
                .collect(),
            maximal: false,
        };
        // S=(2,1) -> S1=(1,1), R=(0,1), S2 = disk group + 1 tube = (1,1)
        let reduced = weak_reduce(&c, &m).unwrap().complex;
        let s1 = reduced.thick().get(&ComponentId::new("S:1")).unwrap();
        let s2 = reduced.thick().get(&ComponentId::new("S:2")).unwrap();
        let r = reduced.thin().get(&ComponentId::new("S:0")).unwrap();
        assert_eq!((s1.genus(), s2.genus(), r.genus()), (1, 1, 0));

        // amalgamate a (2,1)/(1,1) pair across a (1,1) thin component:
        // build it directly
        let mut cx = SplittingComplex::new();
        cx.add_suture(t(), SutureKind::Toroidal).unwrap();
        for (id, role, g) in [
            ("Rlow", Role::Thin, 0),
            ("Rmid", Role::Thin, 1),
            ("S1", Role::Thick, 2),
            ("S2", Role::Thick, 1),
        ] {
            cx.insert_component(
                role,
                ComponentId::new(id),
                SurfaceComponent::on_suture(g, &t(), 1),
            )
            .unwrap();
        }
        cx.insert_body(CompressionBody::over(
            Label::A,
            ComponentId::new("S1"),
            [ComponentId::new("Rlow")],
        ))
        .unwrap();
        cx.insert_body(CompressionBody::over(
            Label::B,
            ComponentId::new("S1"),
            [ComponentId::new("Rmid")],
        ))
        .unwrap();
        cx.insert_body(CompressionBody::over(
            Label::A,
            ComponentId::new("S2"),
            [ComponentId::new("Rmid")],
        ))
        .unwrap();
        cx.insert_body(CompressionBody::over(
            Label::B,
            ComponentId::new("S2"),
            [ComponentId::new("Rlow")],
        ))
        .unwrap();
        assert!(cx.is_valid());
        let out = amalgamate(&cx, &[ComponentId::new("Rmid")].into_iter().collect()).unwrap();
        let merged = out
            .complex
            .thick()
            .get(&ComponentId::new("S1+S2"))
            .unwrap();
        assert_eq!(merged.genus(), 2);
        assert_eq!(merged.total_boundary(), 1);
        assert_eq!(out.record.j_before, out.record.j_after);
    }

    #[test]
    fn amalgamate_rejects_self() {
        let c = circular(1, 2);
        let err = amalgamate(&c, &[ComponentId::new("R")].into_iter().collect());
        assert!(matches!(err, Err(MoveError::SelfAmalgamation(_))));
    }

    #[test]
    fn inflate_deflate_identity() {
        let c = circular(1, 1);
        let inflated = inflate(&c, &ComponentId::new("R")).unwrap().complex;
        assert_eq!(inflated.thin().len(), 2);
        assert_eq!(inflated.thick().len(), 2);
        assert_eq!(inflated.body_count(), 4);
        assert_eq!(inflated.total_handle_number(), 0);
        assert!(inflated.is_fibration_complex());

        let back = deflate(
            &inflated,
            &ComponentId::new("R:t1"),
            &ComponentId::new("R:c1"),
        )
        .unwrap()
        .complex;
        assert_eq!(back, c);
    }

    #[test]
    fn inflate_repeatedly_yields_parallel_copies() {
        let mut c = circular(1, 2);
        for _ in 0..3 {
            c = inflate(&c, &ComponentId::new("R")).unwrap().complex;
        }
        assert_eq!(c.thin().len(), 4);
        assert_eq!(c.thick().len(), 4);
        assert_eq!(c.total_handle_number(), 2);
        assert_eq!(c.total_handle_index(), 2);
    }

    #[test]
    fn deflate_requires_trivial_pair() {
        let c = circular(1, 2); // bodies h=1
        let err = deflate(&c, &ComponentId::new("S"), &ComponentId::new("R"));
        assert!(matches!(err, Err(MoveError::DeflateNonTrivialPair(_))));
    }

    #[test]
    fn deflate_rejects_last_layer() {
        let c = circular(1, 1);
        let err = deflate(&c, &ComponentId::new("S"), &ComponentId::new("R"));
        assert!(matches!(err, Err(MoveError::DeflateLastLayer)));
    }

    #[test]
    fn stabilize_destabilize() {
        let c = circular(1, 1);
        let up = stabilize(&c, &ComponentId::new("S")).unwrap();
        assert_eq!(up.record.h_before, 0);
        assert_eq!(up.record.h_after, 2);
        assert_eq!(up.record.j_after, up.record.j_before + 2);

        let down = destabilize(&up.complex, &ComponentId::new("S")).unwrap();
        assert_eq!(down.complex, c);
        assert_eq!(down.record.j_after, down.record.j_before - 2);
    }

    #[test]
    fn destabilize_needs_genus() {
        // genus 0 thick cannot drop further
        let c = circular(0, 0);
        let err = destabilize(&c, &ComponentId::new("S"));
        assert!(matches!(err, Err(MoveError::DestabilizeGenus(_))));

        // dropping a fibration's thick to genus 0 would give a negative
        // handle number
        let c = circular(1, 1);
        let err = destabilize(&c, &ComponentId::new("S"));
        assert!(matches!(err, Err(MoveError::ResultInvalid { .. })));
    }

    #[test]
    fn move_record_line_shape() {
        let c = circular(1, 1);
        let out = stabilize(&c, &ComponentId::new("S")).unwrap();
        assert_eq!(
            out.record.to_line(),
            "MOVE|stabilize|thick=S|h:0->2|j:0->2"
        );
    }
}
