//! The incidence structure of a (circular) generalized Heegaard splitting:
//! thin and thick surfaces, ambient boundary surfaces, sutures, and the
//! A/B-labeled compression bodies between them.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::body::{BodyError, BodyId, BodyShape, CompressionBody, Label};
use crate::surface::{ComponentId, Surface, SurfaceComponent, SutureId, SutureKind};

/// Where a surface component sits in the splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Thin,
    Thick,
    /// Component of R+ of the ambient sutured manifold.
    BoundaryPlus,
    /// Component of R- of the ambient sutured manifold.
    BoundaryMinus,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Thin => f.write_str("thin"),
            Role::Thick => f.write_str("thick"),
            Role::BoundaryPlus => f.write_str("bplus"),
            Role::BoundaryMinus => f.write_str("bminus"),
        }
    }
}

/// Caller-asserted geometric properties. These are unverified annotations:
/// the abstraction cannot decide them, moves consume them as preconditions
/// and clear any they may invalidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assumption {
    LocallyThin,
    ThinIncompressible,
    StronglyIrreducible,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assumption::LocallyThin => f.write_str("locally_thin"),
            Assumption::ThinIncompressible => f.write_str("thin_incompressible"),
            Assumption::StronglyIrreducible => f.write_str("strongly_irreducible"),
        }
    }
}

impl Assumption {
    pub fn parse(s: &str) -> Option<Assumption> {
        match s {
            "locally_thin" => Some(Assumption::LocallyThin),
            "thin_incompressible" => Some(Assumption::ThinIncompressible),
            "strongly_irreducible" => Some(Assumption::StronglyIrreducible),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate component id `{0}`")]
    DuplicateComponent(ComponentId),
    #[error("duplicate body id `{0}`")]
    DuplicateBody(BodyId),
    #[error("duplicate suture id `{0}`")]
    DuplicateSuture(SutureId),
    #[error("unknown suture `{0}`")]
    UnknownSuture(SutureId),
}

/// A structured validation failure. `validate` returns all of them rather
/// than stopping at the first.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("boundary of `{component}` lies on undeclared suture `{suture}`")]
    UnknownSuture {
        component: ComponentId,
        suture: SutureId,
    },
    #[error("{role} component `{component}` is a sphere")]
    SphereComponent { role: Role, component: ComponentId },
    #[error("body `{body}`: ∂+ reference `{component}` is not a thick component")]
    PlusNotThick { body: BodyId, component: ComponentId },
    #[error("body `{body}`: ∂- reference `{component}` is not a thin or boundary component")]
    MinusNotResolvable { body: BodyId, component: ComponentId },
    #[error("{label}-body `{body}`: ∂- component `{component}` is on the wrong boundary side")]
    WrongSide {
        body: BodyId,
        label: Label,
        component: ComponentId,
    },
    #[error("thick component `{component}` needs exactly one A-body and one B-body (has {a} and {b})")]
    ThickBodyCount {
        component: ComponentId,
        a: usize,
        b: usize,
    },
    #[error("thin component `{component}` must be ∂- of exactly one A-body and one B-body (has {a} and {b})")]
    ThinBodyCount {
        component: ComponentId,
        a: usize,
        b: usize,
    },
    #[error("{role} component `{component}` must be ∂- of exactly one {want}-body (has {have})")]
    BoundaryBodyCount {
        role: Role,
        component: ComponentId,
        want: Label,
        have: usize,
    },
    #[error(transparent)]
    Body(#[from] BodyError),
}

/// Body counts for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BodyCensus {
    pub bodies: usize,
    pub trivial: usize,
    pub handlebodies: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplittingComplex {
    sutures: BTreeMap<SutureId, SutureKind>,
    thin: Surface,
    thick: Surface,
    boundary_plus: Surface,
    boundary_minus: Surface,
    bodies: BTreeMap<BodyId, CompressionBody>,
    assumptions: std::collections::BTreeSet<Assumption>,
}

impl SplittingComplex {
    pub fn new() -> Self {
        SplittingComplex::default()
    }

    pub fn add_suture(&mut self, id: SutureId, kind: SutureKind) -> Result<(), ComplexError> {
        if self.sutures.contains_key(&id) {
            return Err(ComplexError::DuplicateSuture(id));
        }
        self.sutures.insert(id, kind);
        Ok(())
    }

    pub fn sutures(&self) -> impl Iterator<Item = (&SutureId, SutureKind)> {
        self.sutures.iter().map(|(s, k)| (s, *k))
    }

    pub fn suture_kind(&self, id: &SutureId) -> Option<SutureKind> {
        self.sutures.get(id).copied()
    }

    pub fn has_suture(&self, id: &SutureId) -> bool {
        self.sutures.contains_key(id)
    }

    fn surface_mut(&mut self, role: Role) -> &mut Surface {
        match role {
            Role::Thin => &mut self.thin,
            Role::Thick => &mut self.thick,
            Role::BoundaryPlus => &mut self.boundary_plus,
            Role::BoundaryMinus => &mut self.boundary_minus,
        }
    }

    pub fn surface(&self, role: Role) -> &Surface {
        match role {
            Role::Thin => &self.thin,
            Role::Thick => &self.thick,
            Role::BoundaryPlus => &self.boundary_plus,
            Role::BoundaryMinus => &self.boundary_minus,
        }
    }

    pub fn thin(&self) -> &Surface {
        &self.thin
    }

    pub fn thick(&self) -> &Surface {
        &self.thick
    }

    pub fn boundary_plus(&self) -> &Surface {
        &self.boundary_plus
    }

    pub fn boundary_minus(&self) -> &Surface {
        &self.boundary_minus
    }

    pub fn insert_component(
        &mut self,
        role: Role,
        id: ComponentId,
        c: SurfaceComponent,
    ) -> Result<(), ComplexError> {
        if self.role_of(&id).is_some() {
            return Err(ComplexError::DuplicateComponent(id));
        }
        self.surface_mut(role)
            .insert(id, c)
            .expect("collision checked above");
        Ok(())
    }

    pub fn remove_component(&mut self, role: Role, id: &ComponentId) -> Option<SurfaceComponent> {
        self.surface_mut(role).remove(id)
    }

    /// Replaces component data in place, keeping its id and role.
    pub fn update_component(
        &mut self,
        role: Role,
        id: &ComponentId,
        c: SurfaceComponent,
    ) -> Result<(), ComplexError> {
        let surface = self.surface_mut(role);
        if surface.remove(id).is_none() {
            return Err(ComplexError::DuplicateComponent(id.clone()));
        }
        surface.insert(id.clone(), c).expect("slot just vacated");
        Ok(())
    }

    pub fn role_of(&self, id: &ComponentId) -> Option<Role> {
        for role in [
            Role::Thin,
            Role::Thick,
            Role::BoundaryPlus,
            Role::BoundaryMinus,
        ] {
            if self.surface(role).contains(id) {
                return Some(role);
            }
        }
        None
    }

    pub fn component(&self, id: &ComponentId) -> Option<&SurfaceComponent> {
        self.role_of(id).and_then(|r| self.surface(r).get(id))
    }

    pub fn insert_body(&mut self, body: CompressionBody) -> Result<(), ComplexError> {
        if self.bodies.contains_key(&body.id) {
            return Err(ComplexError::DuplicateBody(body.id));
        }
        self.bodies.insert(body.id.clone(), body);
        Ok(())
    }

    pub fn remove_body(&mut self, id: &BodyId) -> Option<CompressionBody> {
        self.bodies.remove(id)
    }

    pub fn body(&self, id: &BodyId) -> Option<&CompressionBody> {
        self.bodies.get(id)
    }

    pub fn body_mut(&mut self, id: &BodyId) -> Option<&mut CompressionBody> {
        self.bodies.get_mut(id)
    }

    pub fn bodies(&self) -> impl Iterator<Item = &CompressionBody> {
        self.bodies.values()
    }

    pub fn body_count(&self) -> usize {
        self.bodies.len()
    }

    /// The body of the given label whose ∂+ is the thick component.
    pub fn body_over(&self, thick: &ComponentId, label: Label) -> Option<&CompressionBody> {
        self.bodies
            .values()
            .find(|b| b.label == label && &b.plus == thick)
    }

    /// The body of the given label having the component in its ∂-.
    pub fn body_under(&self, minus: &ComponentId, label: Label) -> Option<&CompressionBody> {
        self.bodies
            .values()
            .find(|b| b.label == label && b.minus.contains(minus))
    }

    pub fn assume(&mut self, a: Assumption) {
        self.assumptions.insert(a);
    }

    pub fn with_assumption(mut self, a: Assumption) -> Self {
        self.assume(a);
        self
    }

    pub fn drop_assumption(&mut self, a: Assumption) {
        self.assumptions.remove(&a);
    }

    pub fn assumes(&self, a: Assumption) -> bool {
        self.assumptions.contains(&a)
    }

    pub fn assumptions(&self) -> impl Iterator<Item = Assumption> + '_ {
        self.assumptions.iter().copied()
    }

    /// Resolves a body's boundary surfaces. `None` if any reference
    /// dangles or ∂+ is not thick.
    pub fn body_shape(&self, body: &CompressionBody) -> Option<BodyShape> {
        let plus = self.thick.get(&body.plus)?.clone();
        let mut minus = Vec::with_capacity(body.minus.len());
        for id in &body.minus {
            let role = self.role_of(id)?;
            if role == Role::Thick {
                return None;
            }
            minus.push(self.surface(role).get(id)?.clone());
        }
        Some(BodyShape::new(plus, minus))
    }

    /// Checks every defining invariant and returns all violations found.
    /// Idempotent and side-effect free; an empty list means the complex is
    /// a valid generalized Heegaard splitting structure.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();

        // boundary circles must lie on declared sutures; no spheres anywhere
        for role in [
            Role::Thin,
            Role::Thick,
            Role::BoundaryPlus,
            Role::BoundaryMinus,
        ] {
            for (id, c) in self.surface(role).iter() {
                for suture in c.boundary().keys() {
                    if !self.sutures.contains_key(suture) {
                        out.push(Violation::UnknownSuture {
                            component: id.clone(),
                            suture: suture.clone(),
                        });
                    }
                }
                if c.is_sphere() {
                    out.push(Violation::SphereComponent {
                        role,
                        component: id.clone(),
                    });
                }
            }
        }

        // body references and orientation sides
        for body in self.bodies.values() {
            match self.role_of(&body.plus) {
                Some(Role::Thick) => {}
                _ => out.push(Violation::PlusNotThick {
                    body: body.id.clone(),
                    component: body.plus.clone(),
                }),
            }
            for m in &body.minus {
                match self.role_of(m) {
                    Some(Role::Thin) => {}
                    Some(Role::BoundaryMinus) if body.label == Label::A => {}
                    Some(Role::BoundaryPlus) if body.label == Label::B => {}
                    Some(Role::BoundaryMinus) | Some(Role::BoundaryPlus) => {
                        out.push(Violation::WrongSide {
                            body: body.id.clone(),
                            label: body.label,
                            component: m.clone(),
                        })
                    }
                    _ => out.push(Violation::MinusNotResolvable {
                        body: body.id.clone(),
                        component: m.clone(),
                    }),
                }
            }
        }

        // each thick component carries exactly one splitting
        for (id, _) in self.thick.iter() {
            let a = self
                .bodies
                .values()
                .filter(|b| b.label == Label::A && &b.plus == id)
                .count();
            let b = self
                .bodies
                .values()
                .filter(|b| b.label == Label::B && &b.plus == id)
                .count();
            if a != 1 || b != 1 {
                out.push(Violation::ThickBodyCount {
                    component: id.clone(),
                    a,
                    b,
                });
            }
        }

        // each thin component lies between exactly one A- and one B-body
        for (id, _) in self.thin.iter() {
            let a = self
                .bodies
                .values()
                .filter(|b| b.label == Label::A && b.minus.contains(id))
                .count();
            let b = self
                .bodies
                .values()
                .filter(|b| b.label == Label::B && b.minus.contains(id))
                .count();
            if a != 1 || b != 1 {
                out.push(Violation::ThinBodyCount {
                    component: id.clone(),
                    a,
                    b,
                });
            }
        }

        // ambient boundary components belong to exactly one body each
        for (role, want) in [(Role::BoundaryMinus, Label::A), (Role::BoundaryPlus, Label::B)] {
            for (id, _) in self.surface(role).iter() {
                let have = self
                    .bodies
                    .values()
                    .filter(|b| b.label == want && b.minus.contains(id))
                    .count();
                let other = self
                    .bodies
                    .values()
                    .filter(|b| b.label != want && b.minus.contains(id))
                    .count();
                if have != 1 || other != 0 {
                    out.push(Violation::BoundaryBodyCount {
                        role,
                        component: id.clone(),
                        want,
                        have: have + other,
                    });
                }
            }
        }

        // per-body geometry: vertical pairing, spheres, h >= 0
        for body in self.bodies.values() {
            if let Some(shape) = self.body_shape(body) {
                if let Err(e) = shape.check(&body.id) {
                    out.push(Violation::Body(e));
                }
            }
        }

        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Sum of handle numbers over all bodies.
    ///
    /// Assumes the complex validates; dangling references panic.
    pub fn total_handle_number(&self) -> i64 {
        self.bodies
            .values()
            .map(|b| {
                self.body_shape(b)
                    .expect("validated complex")
                    .handle_number()
            })
            .sum()
    }

    /// Sum of handle indices over all bodies. Assumes validity.
    pub fn total_handle_index(&self) -> i64 {
        self.bodies
            .values()
            .map(|b| {
                self.body_shape(b)
                    .expect("validated complex")
                    .handle_index()
            })
            .sum()
    }

    pub fn census(&self) -> BodyCensus {
        let mut census = BodyCensus {
            bodies: self.bodies.len(),
            ..BodyCensus::default()
        };
        for b in self.bodies.values() {
            let shape = self.body_shape(b).expect("validated complex");
            if shape.is_trivial() {
                census.trivial += 1;
            }
            if shape.is_handlebody() {
                census.handlebodies += 1;
            }
        }
        census
    }

    pub fn handlebody_count(&self) -> usize {
        self.census().handlebodies
    }

    /// True when every body is a product, i.e. the splitting is induced by
    /// a fibration (total handle number zero).
    pub fn is_fibration_complex(&self) -> bool {
        self.bodies
            .values()
            .all(|b| self.body_shape(b).expect("validated complex").is_trivial())
    }

    /// Multiset of (genus, total boundary) over thick components, for
    /// round-trip comparisons.
    pub fn thick_data(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<_> = self
            .thick
            .iter()
            .map(|(_, c)| (c.genus(), c.total_boundary()))
            .collect();
        v.sort_unstable();
        v
    }

    /// Total boundary circles per suture over every surface of the complex.
    pub fn suture_incidence(&self, s: &SutureId) -> u32 {
        [
            &self.thin,
            &self.thick,
            &self.boundary_plus,
            &self.boundary_minus,
        ]
        .iter()
        .map(|surf| surf.boundary_on(s))
        .sum()
    }
}
