//! The `.ghs` on-disk format for splitting complexes.
//!
//! Line-oriented UTF-8 with five sections in fixed order:
//!
//! ```text
//! SUTURES
//! T|toroidal
//! SURFACES
//! thin|R|1|T:1
//! thick|S|1|T:1
//! BODIES
//! S.A|A|S
//! S.B|B|S
//! INCIDENCE
//! S.A|R
//! S.B|R
//! ASSUMPTIONS
//! locally_thin
//! ```
//!
//! Fields are separated by a single `|`; `#` starts a comment; blank lines
//! are ignored. A surface line is `role|id|genus|boundary[|orientation]`
//! where `boundary` is `-` for a closed surface or comma-joined
//! `suture:count` pairs. Serialization is canonical: sections always
//! appear, entries are sorted, so equal complexes serialize to identical
//! bytes.

use std::fmt::Write as _;

use thiserror::Error;

use crate::body::{BodyId, CompressionBody, Label};
use crate::complex::{Assumption, Role, SplittingComplex};
use crate::surface::{BoundaryMap, ComponentId, SurfaceComponent, SutureId, SutureKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError {
        line,
        msg: msg.into(),
    }
}

fn boundary_to_string(b: &BoundaryMap) -> String {
    if b.is_empty() {
        return "-".to_string();
    }
    let mut out = String::new();
    for (i, (s, n)) in b.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}:{}", s, n);
    }
    out
}

/// Renders a complex in the canonical byte-stable form.
pub fn serialize(c: &SplittingComplex) -> String {
    let mut out = String::new();
    out.push_str("SUTURES\n");
    for (id, kind) in c.sutures() {
        let _ = writeln!(out, "{}|{}", id, kind);
    }
    out.push_str("SURFACES\n");
    for role in [
        Role::Thin,
        Role::Thick,
        Role::BoundaryPlus,
        Role::BoundaryMinus,
    ] {
        for (id, comp) in c.surface(role).iter() {
            let _ = write!(
                out,
                "{}|{}|{}|{}",
                role,
                id,
                comp.genus(),
                boundary_to_string(comp.boundary())
            );
            if let Some(tag) = comp.orientation() {
                let _ = write!(out, "|{}", tag);
            }
            out.push('\n');
        }
    }
    out.push_str("BODIES\n");
    for body in c.bodies() {
        let _ = writeln!(out, "{}|{}|{}", body.id, body.label, body.plus);
    }
    out.push_str("INCIDENCE\n");
    for body in c.bodies() {
        for m in &body.minus {
            let _ = writeln!(out, "{}|{}", body.id, m);
        }
    }
    out.push_str("ASSUMPTIONS\n");
    for a in c.assumptions() {
        let _ = writeln!(out, "{}", a);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Start,
    Sutures,
    Surfaces,
    Bodies,
    Incidence,
    Assumptions,
}

fn parse_boundary(field: &str, line: usize) -> Result<BoundaryMap, FormatError> {
    let mut out = BoundaryMap::new();
    if field == "-" {
        return Ok(out);
    }
    for pair in field.split(',') {
        let (suture, count) = pair
            .split_once(':')
            .ok_or_else(|| err(line, format!("malformed boundary entry `{}`", pair)))?;
        if suture.is_empty() {
            return Err(err(line, "empty suture name in boundary"));
        }
        let count: u32 = count
            .parse()
            .map_err(|_| err(line, format!("bad circle count `{}`", count)))?;
        if out.insert(SutureId::new(suture), count).is_some() {
            return Err(err(line, format!("suture `{}` listed twice", suture)));
        }
    }
    Ok(out)
}

fn parse_role(field: &str, line: usize) -> Result<Role, FormatError> {
    match field {
        "thin" => Ok(Role::Thin),
        "thick" => Ok(Role::Thick),
        "bplus" => Ok(Role::BoundaryPlus),
        "bminus" => Ok(Role::BoundaryMinus),
        _ => Err(err(line, format!("unknown surface role `{}`", field))),
    }
}

/// Parses the canonical `.ghs` form. References are resolved during the
/// parse (unknown sutures or components are errors); structural invariants
/// are left to [`SplittingComplex::validate`].
pub fn deserialize(text: &str) -> Result<SplittingComplex, FormatError> {
    let mut c = SplittingComplex::new();
    let mut section = Section::Start;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }

        section = match content {
            "SUTURES" => {
                if section != Section::Start {
                    return Err(err(line, "SUTURES section out of order"));
                }
                Section::Sutures
            }
            "SURFACES" => {
                if section != Section::Sutures {
                    return Err(err(line, "SURFACES section out of order"));
                }
                Section::Surfaces
            }
            "BODIES" => {
                if section != Section::Surfaces {
                    return Err(err(line, "BODIES section out of order"));
                }
                Section::Bodies
            }
            "INCIDENCE" => {
                if section != Section::Bodies {
                    return Err(err(line, "INCIDENCE section out of order"));
                }
                Section::Incidence
            }
            "ASSUMPTIONS" => {
                if section != Section::Incidence {
                    return Err(err(line, "ASSUMPTIONS section out of order"));
                }
                Section::Assumptions
            }
            _ => {
                parse_entry(&mut c, section, content, line)?;
                section
            }
        };
    }

    if section != Section::Assumptions {
        return Err(err(
            text.lines().count(),
            "truncated file: missing sections",
        ));
    }
    Ok(c)
}

fn parse_entry(
    c: &mut SplittingComplex,
    section: Section,
    content: &str,
    line: usize,
) -> Result<(), FormatError> {
    let fields: Vec<&str> = content.split('|').collect();
    match section {
        Section::Start => Err(err(line, "expected SUTURES header")),
        Section::Sutures => {
            if fields.len() != 2 {
                return Err(err(line, "suture line needs `id|kind`"));
            }
            let kind = match fields[1] {
                "annular" => SutureKind::Annular,
                "toroidal" => SutureKind::Toroidal,
                other => return Err(err(line, format!("unknown suture kind `{}`", other))),
            };
            c.add_suture(SutureId::new(fields[0]), kind)
                .map_err(|_| err(line, format!("duplicate id `{}`", fields[0])))
        }
        Section::Surfaces => {
            if fields.len() != 4 && fields.len() != 5 {
                return Err(err(line, "surface line needs `role|id|genus|boundary[|tag]`"));
            }
            let role = parse_role(fields[0], line)?;
            let genus: u32 = fields[2]
                .parse()
                .map_err(|_| err(line, format!("bad genus `{}`", fields[2])))?;
            let boundary = parse_boundary(fields[3], line)?;
            for suture in boundary.keys() {
                if !c.has_suture(suture) {
                    return Err(err(line, format!("unknown suture `{}`", suture)));
                }
            }
            let mut comp = SurfaceComponent::new(genus, boundary);
            if fields.len() == 5 {
                comp = comp.with_orientation(fields[4]);
            }
            c.insert_component(role, ComponentId::new(fields[1]), comp)
                .map_err(|_| err(line, format!("duplicate id `{}`", fields[1])))
        }
        Section::Bodies => {
            if fields.len() != 3 {
                return Err(err(line, "body line needs `id|label|plus`"));
            }
            let label = match fields[1] {
                "A" => Label::A,
                "B" => Label::B,
                other => return Err(err(line, format!("unknown body label `{}`", other))),
            };
            let plus = ComponentId::new(fields[2]);
            if c.component(&plus).is_none() {
                return Err(err(line, format!("unknown component `{}`", plus)));
            }
            c.insert_body(CompressionBody::new(
                BodyId::new(fields[0]),
                label,
                plus,
                [],
            ))
            .map_err(|_| err(line, format!("duplicate id `{}`", fields[0])))
        }
        Section::Incidence => {
            if fields.len() != 2 {
                return Err(err(line, "incidence line needs `body|component`"));
            }
            let id = BodyId::new(fields[0]);
            let comp = ComponentId::new(fields[1]);
            if c.component(&comp).is_none() {
                return Err(err(line, format!("unknown component `{}`", comp)));
            }
            match c.body_mut(&id) {
                Some(body) => {
                    if !body.minus.insert(comp) {
                        return Err(err(line, "duplicate incidence entry"));
                    }
                    Ok(())
                }
                None => Err(err(line, format!("unknown body `{}`", id))),
            }
        }
        Section::Assumptions => {
            if fields.len() != 1 {
                return Err(err(line, "assumption line needs a single flag"));
            }
            match Assumption::parse(fields[0]) {
                Some(a) => {
                    c.assume(a);
                    Ok(())
                }
                None => Err(err(line, format!("unknown assumption `{}`", fields[0]))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Role;

    fn fibration() -> SplittingComplex {
        let text = "\
SUTURES
T|toroidal
SURFACES
thin|R|1|T:1
thick|S|1|T:1
BODIES
S.A|A|S
S.B|B|S
INCIDENCE
S.A|R
S.B|R
ASSUMPTIONS
";
        deserialize(text).unwrap()
    }

    #[test]
    fn round_trip_identity() {
        let c = fibration();
        assert!(c.is_valid());
        let text = serialize(&c);
        let c2 = deserialize(&text).unwrap();
        assert_eq!(c, c2);
        assert_eq!(serialize(&c2), text);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "\
# a fibration
SUTURES
T|toroidal   # the knot boundary

SURFACES
thin|R|1|T:1
thick|S|1|T:1
BODIES
S.A|A|S
S.B|B|S
INCIDENCE
S.A|R
S.B|R
ASSUMPTIONS
locally_thin
";
        let c = deserialize(text).unwrap();
        assert!(c.assumes(Assumption::LocallyThin));
        assert_eq!(c.surface(Role::Thin).len(), 1);
    }

    #[test]
    fn unknown_suture_is_an_error() {
        let text = "\
SUTURES
T|toroidal
SURFACES
thin|R|1|U:1
thick|S|1|T:1
BODIES
INCIDENCE
ASSUMPTIONS
";
        let e = deserialize(text).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.msg.contains("unknown suture"));
    }

    #[test]
    fn duplicate_component_id_is_an_error() {
        let text = "\
SUTURES
T|toroidal
SURFACES
thin|R|1|T:1
thick|R|1|T:1
BODIES
INCIDENCE
ASSUMPTIONS
";
        let e = deserialize(text).unwrap_err();
        assert!(e.msg.contains("duplicate id"));
    }

    #[test]
    fn closed_surface_boundary_dash() {
        let text = "\
SUTURES
SURFACES
thick|S|2|-
BODIES
S.A|A|S
S.B|B|S
INCIDENCE
ASSUMPTIONS
";
        let c = deserialize(text).unwrap();
        let comp = c.component(&ComponentId::new("S")).unwrap();
        assert!(comp.is_closed());
        assert_eq!(comp.genus(), 2);
    }

    #[test]
    fn truncated_file() {
        let e = deserialize("SUTURES\nT|toroidal\n").unwrap_err();
        assert!(e.msg.contains("truncated"));
    }

    #[test]
    fn orientation_tag_survives() {
        let mut c = fibration();
        c.remove_component(Role::Thin, &ComponentId::new("R"));
        c.insert_component(
            Role::Thin,
            ComponentId::new("R"),
            SurfaceComponent::on_suture(1, &SutureId::new("T"), 1).with_orientation("coor"),
        )
        .unwrap();
        let text = serialize(&c);
        assert!(text.contains("thin|R|1|T:1|coor"));
        let c2 = deserialize(&text).unwrap();
        assert_eq!(c, c2);
    }
}
