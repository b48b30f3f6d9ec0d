//! Compression bodies: connected cobordism nodes with a single positive
//! boundary surface and a (possibly empty) set of negative boundary
//! surfaces, paired circle-by-circle along sutures by vertical annuli.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::surface::{ComponentId, SurfaceComponent, SutureId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A,
    B,
}

impl Label {
    pub fn other(self) -> Label {
        match self {
            Label::A => Label::B,
            Label::B => Label::A,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A => f.write_str("A"),
            Label::B => f.write_str("B"),
        }
    }
}

/// Identifier of a compression body within a complex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BodyId(String);

impl BodyId {
    pub fn new(id: impl Into<String>) -> Self {
        BodyId(id.into())
    }

    /// Conventional id for the body of the given label over a thick
    /// component: `<thick>.A` or `<thick>.B`.
    pub fn over(plus: &ComponentId, label: Label) -> Self {
        BodyId(format!("{}.{}", plus, label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BodyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for BodyId {
    fn from(s: &str) -> Self {
        BodyId::new(s)
    }
}

/// A connected compression body, referencing its boundary surfaces by id.
///
/// `plus` is the single thick component forming ∂₊; `minus` lists the thin
/// or ambient-boundary components forming ∂₋. Disconnected compression
/// bodies are represented as sets of these nodes, with handle quantities
/// summed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressionBody {
    pub id: BodyId,
    pub label: Label,
    pub plus: ComponentId,
    pub minus: BTreeSet<ComponentId>,
}

impl CompressionBody {
    pub fn new(
        id: BodyId,
        label: Label,
        plus: ComponentId,
        minus: impl IntoIterator<Item = ComponentId>,
    ) -> Self {
        CompressionBody {
            id,
            label,
            plus,
            minus: minus.into_iter().collect(),
        }
    }

    /// Body with derived id `<plus>.<label>`.
    pub fn over(
        label: Label,
        plus: ComponentId,
        minus: impl IntoIterator<Item = ComponentId>,
    ) -> Self {
        let id = BodyId::over(&plus, label);
        CompressionBody::new(id, label, plus, minus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BodyError {
    #[error("body `{body}`: a ∂- component is a sphere")]
    SphereMinus { body: BodyId },
    #[error("body `{body}`: ∂+ is a sphere")]
    SpherePlus { body: BodyId },
    #[error("body `{body}`: vertical pairing fails on suture `{suture}` (∂+ has {plus} circles, ∂- has {minus})")]
    VerticalPairing {
        body: BodyId,
        suture: SutureId,
        plus: u32,
        minus: u32,
    },
    #[error("body `{body}`: handle number {h} is negative")]
    NegativeHandleNumber { body: BodyId, h: i64 },
}

/// The resolved boundary geometry of one connected compression body.
/// All handle arithmetic lives here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BodyShape {
    plus: SurfaceComponent,
    minus: Vec<SurfaceComponent>,
}

impl BodyShape {
    pub fn new(plus: SurfaceComponent, minus: Vec<SurfaceComponent>) -> Self {
        BodyShape { plus, minus }
    }

    pub fn plus(&self) -> &SurfaceComponent {
        &self.plus
    }

    pub fn minus(&self) -> &[SurfaceComponent] {
        &self.minus
    }

    // h(W) = g(∂+W) - g(∂-W) + |#∂-W - 1|, with g summed over components.
    // Counts the minimal number of 0- and 1-handles: one 0-handle is needed
    // iff ∂-W is empty.
    pub fn handle_number(&self) -> i64 {
        let g_plus = i64::from(self.plus.genus());
        let g_minus: i64 = self.minus.iter().map(|c| i64::from(c.genus())).sum();
        let k = self.minus.len() as i64;
        g_plus - g_minus + (k - 1).abs()
    }

    // j(W) = #(1-handles) - #(0-handles) = (χ(∂-W) - χ(∂+W)) / 2
    pub fn handle_index(&self) -> i64 {
        let chi_minus: i64 = self.minus.iter().map(|c| c.euler_char()).sum();
        (chi_minus - self.plus.euler_char()) / 2
    }

    /// Product compression body: no handles at all.
    pub fn is_trivial(&self) -> bool {
        self.handle_number() == 0
    }

    pub fn is_handlebody(&self) -> bool {
        self.minus.is_empty()
    }

    /// Number of vertical annuli on the given suture.
    pub fn vertical_annuli(&self, s: &SutureId) -> u32 {
        self.plus.boundary_on(s)
    }

    /// Checks the defining constraints: no sphere boundary, per-suture
    /// vertical pairing of ∂+ and ∂- circles, and h ≥ 0.
    pub fn check(&self, id: &BodyId) -> Result<(), BodyError> {
        if self.plus.is_sphere() {
            return Err(BodyError::SpherePlus { body: id.clone() });
        }
        if self.minus.iter().any(|c| c.is_sphere()) {
            return Err(BodyError::SphereMinus { body: id.clone() });
        }
        let mut sutures: BTreeSet<&SutureId> = self.plus.boundary().keys().collect();
        for c in &self.minus {
            sutures.extend(c.boundary().keys());
        }
        for s in sutures {
            let plus = self.plus.boundary_on(s);
            let minus: u32 = self.minus.iter().map(|c| c.boundary_on(s)).sum();
            if plus != minus {
                return Err(BodyError::VerticalPairing {
                    body: id.clone(),
                    suture: s.clone(),
                    plus,
                    minus,
                });
            }
        }
        let h = self.handle_number();
        if h < 0 {
            return Err(BodyError::NegativeHandleNumber {
                body: id.clone(),
                h,
            });
        }
        Ok(())
    }
}
