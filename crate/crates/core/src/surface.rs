//! Abstract compact orientable surfaces with boundary on named sutures,
//! and the disk/arc surgery calculus that every rewrite move reduces to.
//!
//! A surface is a formal union of components, each recorded only by its
//! genus and its count of boundary circles per suture. That is exactly the
//! data the handle arithmetic depends on; embeddings and curves are not
//! represented. Surgery outcomes (separating vs non-separating, split
//! partitions) are caller-supplied and validated arithmetically.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Identifier of an annular or toroidal suture.
///
/// Must not contain `|`, `#`, `,`, `:` or whitespace (they are structural
/// in the `.ghs` format).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SutureId(String);

impl SutureId {
    pub fn new(id: impl Into<String>) -> Self {
        SutureId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SutureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SutureId {
    fn from(s: &str) -> Self {
        SutureId::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SutureKind {
    Annular,
    Toroidal,
}

impl fmt::Display for SutureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SutureKind::Annular => f.write_str("annular"),
            SutureKind::Toroidal => f.write_str("toroidal"),
        }
    }
}

/// Stable lineage key of a surface component.
///
/// Surgeries derive child keys deterministically (`x.l` / `x.r` for a
/// separating split) so that move data can reference components by name.
/// Must not contain `|`, `#`, `,` or whitespace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(String);

impl ComponentId {
    pub fn new(id: impl Into<String>) -> Self {
        ComponentId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Child keys of a separating split.
    pub fn split(&self) -> (ComponentId, ComponentId) {
        (
            ComponentId(format!("{}.l", self.0)),
            ComponentId(format!("{}.r", self.0)),
        )
    }

    pub fn suffixed(&self, suffix: &str) -> ComponentId {
        ComponentId(format!("{}{}", self.0, suffix))
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ComponentId {
    fn from(s: &str) -> Self {
        ComponentId::new(s)
    }
}

/// Count of boundary circles per suture. Zero counts are never stored.
pub type BoundaryMap = BTreeMap<SutureId, u32>;

/// Sum of two boundary maps.
pub fn boundary_union(a: &BoundaryMap, b: &BoundaryMap) -> BoundaryMap {
    let mut out = a.clone();
    for (s, n) in b {
        *out.entry(s.clone()).or_insert(0) += n;
    }
    out.retain(|_, n| *n > 0);
    out
}

/// One connected surface: genus plus boundary circles on named sutures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComponent {
    genus: u32,
    boundary: BoundaryMap,
    orientation: Option<String>,
}

impl SurfaceComponent {
    pub fn new(genus: u32, boundary: BoundaryMap) -> Self {
        let mut boundary = boundary;
        boundary.retain(|_, n| *n > 0);
        SurfaceComponent {
            genus,
            boundary,
            orientation: None,
        }
    }

    /// Component with all boundary circles on a single suture.
    pub fn on_suture(genus: u32, suture: &SutureId, circles: u32) -> Self {
        let mut b = BoundaryMap::new();
        if circles > 0 {
            b.insert(suture.clone(), circles);
        }
        SurfaceComponent::new(genus, b)
    }

    pub fn closed(genus: u32) -> Self {
        SurfaceComponent::new(genus, BoundaryMap::new())
    }

    pub fn with_orientation(mut self, tag: impl Into<String>) -> Self {
        self.orientation = Some(tag.into());
        self
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> &BoundaryMap {
        &self.boundary
    }

    pub fn orientation(&self) -> Option<&str> {
        self.orientation.as_deref()
    }

    pub fn boundary_on(&self, s: &SutureId) -> u32 {
        self.boundary.get(s).copied().unwrap_or(0)
    }

    pub fn total_boundary(&self) -> u32 {
        self.boundary.values().sum()
    }

    // χ = 2 - 2g - #∂
    pub fn euler_char(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - i64::from(self.total_boundary())
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn is_sphere(&self) -> bool {
        self.genus == 0 && self.is_closed()
    }
}

/// A formal union of components keyed by lineage id.
///
/// Iteration order is the canonical order (sorted by id), so serialization
/// and reports are reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Surface {
    components: BTreeMap<ComponentId, SurfaceComponent>,
}

impl Surface {
    pub fn new() -> Self {
        Surface::default()
    }

    pub fn singleton(id: ComponentId, c: SurfaceComponent) -> Self {
        let mut s = Surface::new();
        s.components.insert(id, c);
        s
    }

    pub fn insert(&mut self, id: ComponentId, c: SurfaceComponent) -> Result<(), SurgeryError> {
        if self.components.contains_key(&id) {
            return Err(SurgeryError::IdCollision(id));
        }
        self.components.insert(id, c);
        Ok(())
    }

    pub fn remove(&mut self, id: &ComponentId) -> Option<SurfaceComponent> {
        self.components.remove(id)
    }

    pub fn get(&self, id: &ComponentId) -> Option<&SurfaceComponent> {
        self.components.get(id)
    }

    pub fn contains(&self, id: &ComponentId) -> bool {
        self.components.contains_key(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ComponentId, &SurfaceComponent)> {
        self.components.iter()
    }

    pub fn ids(&self) -> impl Iterator<Item = &ComponentId> {
        self.components.keys()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn euler_char(&self) -> i64 {
        self.components.values().map(|c| c.euler_char()).sum()
    }

    pub fn genus_total(&self) -> u32 {
        self.components.values().map(|c| c.genus).sum()
    }

    pub fn boundary_total(&self) -> BoundaryMap {
        let mut out = BoundaryMap::new();
        for c in self.components.values() {
            for (s, n) in &c.boundary {
                *out.entry(s.clone()).or_insert(0) += n;
            }
        }
        out
    }

    pub fn boundary_on(&self, s: &SutureId) -> u32 {
        self.components.values().map(|c| c.boundary_on(s)).sum()
    }
}

/// Genus and boundary of one side of a declared separating split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpec {
    pub genus: u32,
    pub boundary: BoundaryMap,
}

impl SplitSpec {
    pub fn new(genus: u32, boundary: BoundaryMap) -> Self {
        let mut boundary = boundary;
        boundary.retain(|_, n| *n > 0);
        SplitSpec { genus, boundary }
    }

    pub fn on_suture(genus: u32, suture: &SutureId, circles: u32) -> Self {
        let mut b = BoundaryMap::new();
        if circles > 0 {
            b.insert(suture.clone(), circles);
        }
        SplitSpec::new(genus, b)
    }

    fn total_boundary(&self) -> u32 {
        self.boundary.values().sum()
    }

    fn is_sphere(&self) -> bool {
        self.genus == 0 && self.total_boundary() == 0
    }

    fn component(&self) -> SurfaceComponent {
        SurfaceComponent::new(self.genus, self.boundary.clone())
    }
}

/// Compression along a disk: χ increases by exactly 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskSurgery {
    pub target: ComponentId,
    pub kind: DiskSurgeryKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiskSurgeryKind {
    /// Compressing circle does not separate: genus drops by one.
    NonSeparating,
    /// Compressing circle separates: the declared split must partition the
    /// genus and the per-suture boundary exactly, and neither side may be a
    /// sphere.
    Separating { left: SplitSpec, right: SplitSpec },
}

/// Cut along a properly embedded arc: χ increases by exactly 1.
///
/// Result boundary maps are caller-supplied so that cut circles may be
/// reassigned to new sutures (annulus chops need this); only boundary
/// totals are constrained by the kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSurgery {
    pub target: ComponentId,
    pub kind: ArcSurgeryKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArcSurgeryKind {
    /// Arc joins two distinct boundary circles: genus unchanged, total
    /// boundary drops by one.
    JoinTwoCircles { result: BoundaryMap },
    /// Arc with both ends on one circle, non-separating: genus drops by
    /// one, total boundary grows by one.
    SameCircleNonSeparating { result: BoundaryMap },
    /// Arc with both ends on one circle, separating.
    SameCircleSeparating { left: SplitSpec, right: SplitSpec },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("unknown component `{0}`")]
    UnknownComponent(ComponentId),
    #[error("component id `{0}` already present")]
    IdCollision(ComponentId),
    #[error("genus underflow on `{0}`")]
    GenusUnderflow(ComponentId),
    #[error("surgery on `{0}` would create a sphere")]
    SphereCreated(ComponentId),
    #[error("split of `{target}` does not partition genus: {left} + {right} != {total}")]
    GenusSplitMismatch {
        target: ComponentId,
        left: u32,
        right: u32,
        total: u32,
    },
    #[error("split of `{target}` does not partition the boundary on suture `{suture}`")]
    BoundarySplitMismatch {
        target: ComponentId,
        suture: SutureId,
    },
    #[error("arc surgery on `{target}` must change total boundary from {from} to {to}")]
    BoundaryTotalMismatch {
        target: ComponentId,
        from: u32,
        to: u32,
    },
    #[error("component `{0}` has too few boundary circles for this arc surgery")]
    NotEnoughBoundary(ComponentId),
    #[error("components have no common boundary on suture `{0}`")]
    NoBoundaryOnSuture(SutureId),
}

/// Records which new components each old component turned into.
///
/// Total on the old surface and surjective onto the new one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lineage {
    map: BTreeMap<ComponentId, Vec<ComponentId>>,
}

impl Lineage {
    pub fn identity(s: &Surface) -> Self {
        let map = s
            .ids()
            .map(|id| (id.clone(), vec![id.clone()]))
            .collect();
        Lineage { map }
    }

    pub fn children(&self, id: &ComponentId) -> &[ComponentId] {
        self.map.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ComponentId, &Vec<ComponentId>)> {
        self.map.iter()
    }

    /// `self` then `next`.
    pub fn then(&self, next: &Lineage) -> Lineage {
        let map = self
            .map
            .iter()
            .map(|(old, mids)| {
                let new = mids
                    .iter()
                    .flat_map(|m| next.children(m).iter().cloned())
                    .collect();
                (old.clone(), new)
            })
            .collect();
        Lineage { map }
    }

    fn record(surface: &Surface, target: &ComponentId, children: Vec<ComponentId>) -> Lineage {
        let mut map: BTreeMap<_, _> = surface
            .ids()
            .filter(|id| *id != target)
            .map(|id| (id.clone(), vec![id.clone()]))
            .collect();
        map.insert(target.clone(), children);
        Lineage { map }
    }
}

fn check_split(
    target: &ComponentId,
    c: &SurfaceComponent,
    left: &SplitSpec,
    right: &SplitSpec,
    boundary_total_delta: u32,
) -> Result<(), SurgeryError> {
    if left.genus + right.genus != c.genus {
        return Err(SurgeryError::GenusSplitMismatch {
            target: target.clone(),
            left: left.genus,
            right: right.genus,
            total: c.genus,
        });
    }
    if left.is_sphere() || right.is_sphere() {
        return Err(SurgeryError::SphereCreated(target.clone()));
    }
    if left.total_boundary() + right.total_boundary() != c.total_boundary() + boundary_total_delta {
        return Err(SurgeryError::BoundaryTotalMismatch {
            target: target.clone(),
            from: c.total_boundary(),
            to: left.total_boundary() + right.total_boundary(),
        });
    }
    Ok(())
}

/// Applies a disk surgery. χ grows by exactly 2; the component count is
/// unchanged (non-separating) or grows by one (separating).
pub fn apply_disk_surgery(
    s: &Surface,
    d: &DiskSurgery,
) -> Result<(Surface, Lineage), SurgeryError> {
    let c = s
        .get(&d.target)
        .ok_or_else(|| SurgeryError::UnknownComponent(d.target.clone()))?;
    let mut out = s.clone();
    let lineage;
    match &d.kind {
        DiskSurgeryKind::NonSeparating => {
            if c.genus == 0 {
                return Err(SurgeryError::GenusUnderflow(d.target.clone()));
            }
            let new = SurfaceComponent::new(c.genus - 1, c.boundary.clone());
            if new.is_sphere() {
                return Err(SurgeryError::SphereCreated(d.target.clone()));
            }
            out.components.insert(d.target.clone(), new);
            lineage = Lineage::record(s, &d.target, vec![d.target.clone()]);
        }
        DiskSurgeryKind::Separating { left, right } => {
            // Disk surgery leaves the boundary untouched, so the split must
            // partition the boundary per suture, not just in total.
            check_split(&d.target, c, left, right, 0)?;
            for suture in c
                .boundary
                .keys()
                .chain(left.boundary.keys())
                .chain(right.boundary.keys())
            {
                let have = left.boundary.get(suture).copied().unwrap_or(0)
                    + right.boundary.get(suture).copied().unwrap_or(0);
                if have != c.boundary_on(suture) {
                    return Err(SurgeryError::BoundarySplitMismatch {
                        target: d.target.clone(),
                        suture: suture.clone(),
                    });
                }
            }
            let (lid, rid) = d.target.split();
            out.components.remove(&d.target);
            out.insert(lid.clone(), left.component())?;
            out.insert(rid.clone(), right.component())?;
            lineage = Lineage::record(s, &d.target, vec![lid, rid]);
        }
    }
    debug_assert_eq!(out.euler_char(), s.euler_char() + 2);
    Ok((out, lineage))
}

/// Applies an arc surgery. χ grows by exactly 1.
pub fn apply_arc_surgery(s: &Surface, a: &ArcSurgery) -> Result<(Surface, Lineage), SurgeryError> {
    let c = s
        .get(&a.target)
        .ok_or_else(|| SurgeryError::UnknownComponent(a.target.clone()))?;
    let mut out = s.clone();
    let lineage;
    match &a.kind {
        ArcSurgeryKind::JoinTwoCircles { result } => {
            if c.total_boundary() < 2 {
                return Err(SurgeryError::NotEnoughBoundary(a.target.clone()));
            }
            let new = SurfaceComponent::new(c.genus, result.clone());
            if new.total_boundary() != c.total_boundary() - 1 {
                return Err(SurgeryError::BoundaryTotalMismatch {
                    target: a.target.clone(),
                    from: c.total_boundary(),
                    to: new.total_boundary(),
                });
            }
            out.components.insert(a.target.clone(), new);
            lineage = Lineage::record(s, &a.target, vec![a.target.clone()]);
        }
        ArcSurgeryKind::SameCircleNonSeparating { result } => {
            if c.total_boundary() == 0 {
                return Err(SurgeryError::NotEnoughBoundary(a.target.clone()));
            }
            if c.genus == 0 {
                return Err(SurgeryError::GenusUnderflow(a.target.clone()));
            }
            let new = SurfaceComponent::new(c.genus - 1, result.clone());
            if new.total_boundary() != c.total_boundary() + 1 {
                return Err(SurgeryError::BoundaryTotalMismatch {
                    target: a.target.clone(),
                    from: c.total_boundary(),
                    to: new.total_boundary(),
                });
            }
            out.components.insert(a.target.clone(), new);
            lineage = Lineage::record(s, &a.target, vec![a.target.clone()]);
        }
        ArcSurgeryKind::SameCircleSeparating { left, right } => {
            if c.total_boundary() == 0 {
                return Err(SurgeryError::NotEnoughBoundary(a.target.clone()));
            }
            check_split(&a.target, c, left, right, 1)?;
            let (lid, rid) = a.target.split();
            out.components.remove(&a.target);
            out.insert(lid.clone(), left.component())?;
            out.insert(rid.clone(), right.component())?;
            lineage = Lineage::record(s, &a.target, vec![lid, rid]);
        }
    }
    debug_assert_eq!(out.euler_char(), s.euler_char() + 1);
    Ok((out, lineage))
}

/// Boundary sum of two components along a shared suture: the two surfaces
/// meet along a single arc, so genus adds, the shared suture loses one
/// circle, and χ(a ♮ b) = χ(a) + χ(b) - 1.
pub fn boundary_sum(
    a: &SurfaceComponent,
    b: &SurfaceComponent,
    suture: &SutureId,
) -> Result<SurfaceComponent, SurgeryError> {
    if a.boundary_on(suture) == 0 || b.boundary_on(suture) == 0 {
        return Err(SurgeryError::NoBoundaryOnSuture(suture.clone()));
    }
    let mut boundary = boundary_union(a.boundary(), b.boundary());
    *boundary.get_mut(suture).expect("shared suture") -= 1;
    boundary.retain(|_, n| *n > 0);
    Ok(SurfaceComponent::new(a.genus + b.genus, boundary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> SutureId {
        SutureId::new("T")
    }

    fn comp(genus: u32, circles: u32) -> SurfaceComponent {
        SurfaceComponent::on_suture(genus, &t(), circles)
    }

    fn single(genus: u32, circles: u32) -> Surface {
        Surface::singleton(ComponentId::new("x"), comp(genus, circles))
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(Surface::new().euler_char(), 0);
        assert_eq!(single(1, 1).euler_char(), -1);

        let mut s = Surface::new();
        s.insert(ComponentId::new("a"), comp(2, 1)).unwrap();
        s.insert(ComponentId::new("b"), comp(0, 2)).unwrap();
        assert_eq!(s.euler_char(), -3);
    }

    #[test]
    fn disk_non_separating() {
        let s = single(2, 1);
        let d = DiskSurgery {
            target: ComponentId::new("x"),
            kind: DiskSurgeryKind::NonSeparating,
        };
        let (out, lin) = apply_disk_surgery(&s, &d).unwrap();
        assert_eq!(out.get(&ComponentId::new("x")).unwrap(), &comp(1, 1));
        assert_eq!(lin.children(&ComponentId::new("x")), &[ComponentId::new("x")]);
    }

    #[test]
    fn disk_separating_chi_oracle() {
        // (g=2,b=1) split into (1,1) and (1,0): χ -3 -> -1, checked against
        // the direct formula on the pieces.
        let s = single(2, 1);
        let d = DiskSurgery {
            target: ComponentId::new("x"),
            kind: DiskSurgeryKind::Separating {
                left: SplitSpec::on_suture(1, &t(), 1),
                right: SplitSpec::on_suture(1, &t(), 0),
            },
        };
        let (out, lin) = apply_disk_surgery(&s, &d).unwrap();
        assert_eq!(out.len(), 2);
        let direct: i64 = out.iter().map(|(_, c)| 2 - 2 * i64::from(c.genus()) - i64::from(c.total_boundary())).sum();
        assert_eq!(direct, -1);
        assert_eq!(out.euler_char(), s.euler_char() + 2);
        assert_eq!(lin.children(&ComponentId::new("x")).len(), 2);
    }

    #[test]
    fn disk_genus_underflow() {
        let s = single(0, 1);
        let d = DiskSurgery {
            target: ComponentId::new("x"),
            kind: DiskSurgeryKind::NonSeparating,
        };
        assert_eq!(
            apply_disk_surgery(&s, &d),
            Err(SurgeryError::GenusUnderflow(ComponentId::new("x")))
        );
    }

    #[test]
    fn disk_sphere_rejected() {
        // torus with no boundary compressed along a non-separating disk
        // would become a sphere
        let s = single(1, 0);
        let d = DiskSurgery {
            target: ComponentId::new("x"),
            kind: DiskSurgeryKind::NonSeparating,
        };
        assert_eq!(
            apply_disk_surgery(&s, &d),
            Err(SurgeryError::SphereCreated(ComponentId::new("x")))
        );
    }

    #[test]
    fn disk_unknown_target() {
        let s = single(1, 1);
        let d = DiskSurgery {
            target: ComponentId::new("nope"),
            kind: DiskSurgeryKind::NonSeparating,
        };
        assert!(matches!(
            apply_disk_surgery(&s, &d),
            Err(SurgeryError::UnknownComponent(_))
        ));
    }

    #[test]
    fn disk_separating_must_partition_boundary_per_suture() {
        let u = SutureId::new("U");
        let mut b = BoundaryMap::new();
        b.insert(t(), 1);
        b.insert(u.clone(), 1);
        let s = Surface::singleton(ComponentId::new("x"), SurfaceComponent::new(1, b));
        // totals match but the suture assignment does not
        let d = DiskSurgery {
            target: ComponentId::new("x"),
            kind: DiskSurgeryKind::Separating {
                left: SplitSpec::on_suture(0, &t(), 2),
                right: SplitSpec::on_suture(1, &u, 0),
            },
        };
        assert!(matches!(
            apply_disk_surgery(&s, &d),
            Err(SurgeryError::BoundarySplitMismatch { .. })
        ));
    }

    #[test]
    fn arc_join_two_circles() {
        let s = single(0, 2);
        let a = ArcSurgery {
            target: ComponentId::new("x"),
            kind: ArcSurgeryKind::JoinTwoCircles {
                result: comp(0, 1).boundary().clone(),
            },
        };
        let (out, _) = apply_arc_surgery(&s, &a).unwrap();
        assert_eq!(out.get(&ComponentId::new("x")).unwrap(), &comp(0, 1));
    }

    #[test]
    fn arc_same_circle_non_separating_oracle() {
        // (1,1) -> (0,2); oracle: 2g' + b' = 2g + b - 1
        let s = single(1, 1);
        let a = ArcSurgery {
            target: ComponentId::new("x"),
            kind: ArcSurgeryKind::SameCircleNonSeparating {
                result: comp(0, 2).boundary().clone(),
            },
        };
        let (out, _) = apply_arc_surgery(&s, &a).unwrap();
        let c = out.get(&ComponentId::new("x")).unwrap();
        assert_eq!(2 * c.genus() + c.total_boundary(), 2 * 1 + 1 - 1);
        assert_eq!(c, &comp(0, 2));
    }

    #[test]
    fn arc_disk_cut_into_two_disks() {
        let s = single(0, 1);
        let a = ArcSurgery {
            target: ComponentId::new("x"),
            kind: ArcSurgeryKind::SameCircleSeparating {
                left: SplitSpec::on_suture(0, &t(), 1),
                right: SplitSpec::on_suture(0, &t(), 1),
            },
        };
        let (out, _) = apply_arc_surgery(&s, &a).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out.euler_char(), 2);
    }

    #[test]
    fn arc_underflow() {
        let s = single(0, 1);
        let a = ArcSurgery {
            target: ComponentId::new("x"),
            kind: ArcSurgeryKind::SameCircleNonSeparating {
                result: comp(0, 2).boundary().clone(),
            },
        };
        assert_eq!(
            apply_arc_surgery(&s, &a),
            Err(SurgeryError::GenusUnderflow(ComponentId::new("x")))
        );
    }

    #[test]
    fn boundary_sum_examples() {
        // (1,1) ♮ (1,1) -> (2,1)
        let r = boundary_sum(&comp(1, 1), &comp(1, 1), &t()).unwrap();
        assert_eq!(r, comp(2, 1));
        // disk is the identity
        let r = boundary_sum(&comp(0, 1), &comp(3, 1), &t()).unwrap();
        assert_eq!(r, comp(3, 1));
        // (1,2) ♮ (2,1) -> (3,2), χ(a)+χ(b)-1 = -2-3-1 = -6 = χ(3,2)
        let r = boundary_sum(&comp(1, 2), &comp(2, 1), &t()).unwrap();
        assert_eq!(r, comp(3, 2));
        assert_eq!(r.euler_char(), comp(1, 2).euler_char() + comp(2, 1).euler_char() - 1);
        // no shared boundary
        assert!(boundary_sum(&comp(1, 0), &comp(1, 1), &t()).is_err());
    }

    #[test]
    fn lineage_compose() {
        let s = single(2, 1);
        let d1 = DiskSurgery {
            target: ComponentId::new("x"),
            kind: DiskSurgeryKind::Separating {
                left: SplitSpec::on_suture(1, &t(), 1),
                right: SplitSpec::on_suture(1, &t(), 0),
            },
        };
        let (mid, l1) = apply_disk_surgery(&s, &d1).unwrap();
        let d2 = DiskSurgery {
            target: ComponentId::new("x.l"),
            kind: DiskSurgeryKind::NonSeparating,
        };
        let (_, l2) = apply_disk_surgery(&mid, &d2).unwrap();
        let l = l1.then(&l2);
        assert_eq!(
            l.children(&ComponentId::new("x")),
            &[ComponentId::new("x.l"), ComponentId::new("x.r")]
        );
    }
}
