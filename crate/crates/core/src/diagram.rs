//! Link and spatial-graph diagrams: JSON schema, validation, meridians and
//! longitudes.
//!
//! A diagram is a list of *strands*: link components (closed, cyclic arc
//! lists) or graph edges (open arc lists running from one vertex to another).
//! Strand declaration order is significant: it fixes which entry of an
//! [`NLabeling`] belongs to which component or edge.
//!
//! Crossing sign convention: a crossing is positive when the under-strand,
//! followed along its orientation, sees the over-strand pass from left to
//! right. At a positive crossing `x_out = x_in ▷ x_over`, at a negative one
//! `x_out = x_in ▷⁻¹ x_over`.
//!
//! Vertex incidences are listed in clockwise order as seen in the
//! projection (any starting point). Together with the crossing rule above
//! this makes the vertex relation agree with twisting edges at a vertex.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freeword::{Alphabet, FreeWord, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramKind {
    Link,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

/// On-disk form of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub kind: DiagramKind,
    pub strands: Vec<StrandDoc>,
    #[serde(default)]
    pub crossings: Vec<CrossingDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<VertexDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrandDoc {
    pub name: String,
    pub arcs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingDoc {
    pub over: String,
    pub under_in: String,
    pub under_out: String,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub incident: Vec<IncidenceDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceDoc {
    pub arc: String,
    pub dir: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub name: String,
    pub arcs: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub over: u32,
    pub under_in: u32,
    pub under_out: u32,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub incident: Vec<(u32, Direction)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub kind: DiagramKind,
    arcs: Alphabet,
    arc_strand: Vec<usize>,
    pub strands: Vec<Strand>,
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    BadArcName,
    DuplicateArc,
    UnknownArc,
    EmptyStrand,
    BadSign,
    UnderInReused,
    UnderOutReused,
    CrossingNotAdjacent,
    ArcsNotJoined,
    VertexOnLink,
    MissingVertices,
    EmptyVertex,
    BadIncidence,
    DanglingEdgeEnd,
    DuplicateEdgeEnd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

/// Every invariant violation found in a diagram; empty when valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation { kind, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", v.message)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid diagram:\n{0}")]
    Invalid(ValidationReport),
    #[error("strand index {index} out of range ({count} strands)")]
    StrandOutOfRange { index: usize, count: usize },
    #[error("longitudes are defined for link components only")]
    NotALink,
    #[error("N-labeling has {got} entries but the diagram has {expected} strands")]
    LabelingLength { expected: usize, got: usize },
    #[error("invalid N-labeling `{0}`: entries must be integers >= 1")]
    BadLabeling(String),
}

/// Reserved characters keep the text word format lossless.
fn arc_name_ok(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && !name.chars().any(|c| c.is_whitespace() || c == '^' || c == ',')
}

impl Diagram {
    /// Resolves names into indices. Structural invariants are left to
    /// [`Diagram::validate`].
    pub fn from_doc(doc: &DiagramDoc) -> Result<Diagram, ValidationReport> {
        let mut report = ValidationReport::default();
        let mut arcs = Alphabet::default();
        let mut arc_strand = Vec::new();
        let mut strands = Vec::new();
        for (si, s) in doc.strands.iter().enumerate() {
            if s.arcs.is_empty() {
                report.push(ViolationKind::EmptyStrand, format!("strand `{}` has no arcs", s.name));
            }
            let mut ids = Vec::new();
            for a in &s.arcs {
                if !arc_name_ok(a) {
                    report.push(
                        ViolationKind::BadArcName,
                        format!("arc name `{a}` is empty, `1`, or contains whitespace, `^` or `,`"),
                    );
                }
                match arcs.push(a.clone()) {
                    Ok(id) => {
                        arc_strand.push(si);
                        ids.push(id);
                    }
                    Err(_) => report.push(ViolationKind::DuplicateArc, format!("arc `{a}` declared twice")),
                }
            }
            strands.push(Strand { name: s.name.clone(), arcs: ids });
        }

        let resolve = |name: &str, what: &str, report: &mut ValidationReport| -> Option<u32> {
            let id = arcs.index_of(name);
            if id.is_none() {
                report.push(ViolationKind::UnknownArc, format!("{what} refers to unknown arc `{name}`"));
            }
            id
        };

        let mut crossings = Vec::new();
        for (ci, c) in doc.crossings.iter().enumerate() {
            let what = format!("crossing {ci}");
            let over = resolve(&c.over, &what, &mut report);
            let under_in = resolve(&c.under_in, &what, &mut report);
            let under_out = resolve(&c.under_out, &what, &mut report);
            if c.sign != 1 && c.sign != -1 {
                report.push(ViolationKind::BadSign, format!("{what} has sign {} (must be 1 or -1)", c.sign));
            }
            if let (Some(over), Some(under_in), Some(under_out)) = (over, under_in, under_out) {
                crossings.push(Crossing { over, under_in, under_out, sign: c.sign.signum() });
            }
        }

        let mut vertices = Vec::new();
        for (vi, v) in doc.vertices.iter().enumerate() {
            let what = format!("vertex {vi}");
            let incident = v
                .incident
                .iter()
                .filter_map(|inc| resolve(&inc.arc, &what, &mut report).map(|a| (a, inc.dir)))
                .collect();
            vertices.push(Vertex { incident });
        }

        if report.is_empty() {
            Ok(Diagram { kind: doc.kind, arcs, arc_strand, strands, crossings, vertices })
        } else {
            Err(report)
        }
    }

    pub fn to_doc(&self) -> DiagramDoc {
        let name = |a: u32| self.arcs.name(a).to_string();
        DiagramDoc {
            kind: self.kind,
            strands: self
                .strands
                .iter()
                .map(|s| StrandDoc { name: s.name.clone(), arcs: s.arcs.iter().map(|&a| name(a)).collect() })
                .collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| CrossingDoc {
                    over: name(c.over),
                    under_in: name(c.under_in),
                    under_out: name(c.under_out),
                    sign: c.sign,
                })
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDoc {
                    incident: v.incident.iter().map(|&(a, dir)| IncidenceDoc { arc: name(a), dir }).collect(),
                })
                .collect(),
        }
    }

    /// Pretty-printed JSON; parses back to an equal diagram.
    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("diagram serializes")
    }

    pub fn arcs(&self) -> &Alphabet {
        &self.arcs
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn n_strands(&self) -> usize {
        self.strands.len()
    }

    pub fn strand_of(&self, arc: u32) -> usize {
        self.arc_strand[arc as usize]
    }

    /// Checks every structural invariant, collecting all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let name = |a: u32| self.arcs.name(a);
        let n = self.n_arcs();

        let mut by_under_in: Vec<Option<usize>> = vec![None; n];
        let mut by_under_out: Vec<Option<usize>> = vec![None; n];
        for (ci, c) in self.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                report.push(ViolationKind::BadSign, format!("crossing {ci} has sign {}", c.sign));
            }
            match by_under_in[c.under_in as usize] {
                Some(prev) => report.push(
                    ViolationKind::UnderInReused,
                    format!("arc `{}` is under_in of crossings {prev} and {ci}", name(c.under_in)),
                ),
                None => by_under_in[c.under_in as usize] = Some(ci),
            }
            match by_under_out[c.under_out as usize] {
                Some(prev) => report.push(
                    ViolationKind::UnderOutReused,
                    format!("arc `{}` is under_out of crossings {prev} and {ci}", name(c.under_out)),
                ),
                None => by_under_out[c.under_out as usize] = Some(ci),
            }
            if !self.follows(c.under_in, c.under_out) {
                report.push(
                    ViolationKind::CrossingNotAdjacent,
                    format!(
                        "crossing {ci}: `{}` is not followed by `{}` in its strand",
                        name(c.under_in),
                        name(c.under_out)
                    ),
                );
            }
        }

        for s in &self.strands {
            let len = s.arcs.len();
            if len == 0 {
                report.push(ViolationKind::EmptyStrand, format!("strand `{}` has no arcs", s.name));
                continue;
            }
            let pairs = match self.kind {
                DiagramKind::Link if len == 1 => 0,
                DiagramKind::Link => len,
                DiagramKind::Graph => len - 1,
            };
            for k in 0..pairs {
                let (a, b) = (s.arcs[k], s.arcs[(k + 1) % len]);
                let joined = by_under_in[a as usize]
                    .map(|ci| self.crossings[ci].under_out == b)
                    .unwrap_or(false);
                if !joined {
                    report.push(
                        ViolationKind::ArcsNotJoined,
                        format!("strand `{}`: arcs `{}` and `{}` are not joined by a crossing", s.name, name(a), name(b)),
                    );
                }
            }
        }

        match self.kind {
            DiagramKind::Link => {
                if !self.vertices.is_empty() {
                    report.push(ViolationKind::VertexOnLink, "link diagrams cannot have vertices".to_string());
                }
            }
            DiagramKind::Graph => self.validate_vertices(&mut report),
        }
        report
    }

    fn validate_vertices(&self, report: &mut ValidationReport) {
        let name = |a: u32| self.arcs.name(a);
        if self.vertices.is_empty() && !self.strands.is_empty() {
            report.push(ViolationKind::MissingVertices, "graph diagram has no vertices".to_string());
        }
        let mut starts = vec![0usize; self.n_strands()];
        let mut ends = vec![0usize; self.n_strands()];
        for (vi, v) in self.vertices.iter().enumerate() {
            if v.incident.is_empty() {
                report.push(ViolationKind::EmptyVertex, format!("vertex {vi} has no incident arcs"));
            }
            for &(a, dir) in &v.incident {
                let si = self.strand_of(a);
                let arcs = &self.strands[si].arcs;
                match dir {
                    Direction::Out if arcs.first() == Some(&a) => starts[si] += 1,
                    Direction::In if arcs.last() == Some(&a) => ends[si] += 1,
                    _ => report.push(
                        ViolationKind::BadIncidence,
                        format!(
                            "vertex {vi}: arc `{}` does not {} here (edge `{}`)",
                            name(a),
                            if dir == Direction::Out { "start" } else { "end" },
                            self.strands[si].name
                        ),
                    ),
                }
            }
        }
        for (si, s) in self.strands.iter().enumerate() {
            for (count, end) in [(starts[si], "start"), (ends[si], "end")] {
                match count {
                    0 => report.push(
                        ViolationKind::DanglingEdgeEnd,
                        format!("edge `{}`: {end} is not attached to any vertex", s.name),
                    ),
                    1 => {}
                    _ => report.push(
                        ViolationKind::DuplicateEdgeEnd,
                        format!("edge `{}`: {end} attached {count} times", s.name),
                    ),
                }
            }
        }
    }

    /// Whether `b` is the arc after `a` along the same strand.
    fn follows(&self, a: u32, b: u32) -> bool {
        let si = self.strand_of(a);
        if self.strand_of(b) != si {
            return false;
        }
        let arcs = &self.strands[si].arcs;
        let pos = arcs.iter().position(|&x| x == a).expect("arc in its strand");
        match self.kind {
            DiagramKind::Link => arcs[(pos + 1) % arcs.len()] == b,
            DiagramKind::Graph => pos + 1 < arcs.len() && arcs[pos + 1] == b,
        }
    }

    fn check_strand(&self, i: usize) -> Result<&Strand, DiagramError> {
        self.strands.get(i).ok_or(DiagramError::StrandOutOfRange { index: i, count: self.n_strands() })
    }

    /// The generator of the first declared arc of strand `i`.
    pub fn meridian(&self, i: usize) -> Result<FreeWord, DiagramError> {
        let s = self.check_strand(i)?;
        Ok(FreeWord::gen(s.arcs[0]))
    }

    /// Blackboard longitude of link component `i`, based at its first arc:
    /// the over-arcs met at each undercrossing, raised to the crossing sign.
    pub fn longitude(&self, i: usize) -> Result<FreeWord, DiagramError> {
        if self.kind != DiagramKind::Link {
            return Err(DiagramError::NotALink);
        }
        let s = self.check_strand(i)?;
        let under: HashMap<u32, &Crossing> = self.crossings.iter().map(|c| (c.under_in, c)).collect();
        Ok(s.arcs
            .iter()
            .filter_map(|a| under.get(a))
            .map(|c| Letter::new(c.over, c.sign))
            .collect())
    }

    pub fn check_labeling(&self, n: &NLabeling) -> Result<(), DiagramError> {
        if n.len() != self.n_strands() {
            return Err(DiagramError::LabelingLength { expected: self.n_strands(), got: n.len() });
        }
        Ok(())
    }
}

/// Parses and validates a JSON diagram document.
pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let doc: DiagramDoc = serde_json::from_str(text).map_err(|e| DiagramError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let d = Diagram::from_doc(&doc).map_err(DiagramError::Invalid)?;
    let report = d.validate();
    if report.is_empty() {
        Ok(d)
    } else {
        Err(DiagramError::Invalid(report))
    }
}

/// Per-strand orders `N = (n_1, ..., n_k)`, in strand declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct NLabeling(Vec<u32>);

impl NLabeling {
    pub fn new(values: Vec<u32>) -> Result<NLabeling, DiagramError> {
        if values.is_empty() || values.contains(&0) {
            return Err(DiagramError::BadLabeling(format!("{values:?}")));
        }
        Ok(NLabeling(values))
    }

    /// Parses a comma list such as `3,3,2,2,2,2`.
    pub fn parse(text: &str) -> Result<NLabeling, DiagramError> {
        let values = text
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| DiagramError::BadLabeling(text.to_string()))?;
        NLabeling::new(values).map_err(|_| DiagramError::BadLabeling(text.to_string()))
    }

    pub fn uniform(n: u32, len: usize) -> NLabeling {
        assert!(n >= 1 && len >= 1);
        NLabeling(vec![n; len])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }
}

impl TryFrom<Vec<u32>> for NLabeling {
    type Error = DiagramError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        NLabeling::new(v)
    }
}

impl From<NLabeling> for Vec<u32> {
    fn from(n: NLabeling) -> Vec<u32> {
        n.0
    }
}

impl fmt::Display for NLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const UNKNOT: &str = r#"{"kind":"link","strands":[{"name":"K","arcs":["a"]}],"crossings":[]}"#;

    // Standard right-handed trefoil: arc a ends under c, b under a, c under b.
    pub(crate) const TREFOIL: &str = r#"{
        "kind": "link",
        "strands": [{"name": "K", "arcs": ["a", "b", "c"]}],
        "crossings": [
            {"over": "c", "under_in": "a", "under_out": "b", "sign": 1},
            {"over": "a", "under_in": "b", "under_out": "c", "sign": 1},
            {"over": "b", "under_in": "c", "under_out": "a", "sign": 1}
        ]
    }"#;

    pub(crate) const HOPF: &str = r#"{
        "kind": "link",
        "strands": [{"name": "K1", "arcs": ["a"]}, {"name": "K2", "arcs": ["b"]}],
        "crossings": [
            {"over": "b", "under_in": "a", "under_out": "a", "sign": 1},
            {"over": "a", "under_in": "b", "under_out": "b", "sign": 1}
        ]
    }"#;

    pub(crate) const THETA: &str = r#"{
        "kind": "graph",
        "strands": [{"name": "e1", "arcs": ["x1"]}, {"name": "e2", "arcs": ["x2"]}, {"name": "e3", "arcs": ["x3"]}],
        "vertices": [
            {"incident": [{"arc": "x1", "dir": "out"}, {"arc": "x2", "dir": "out"}, {"arc": "x3", "dir": "out"}]},
            {"incident": [{"arc": "x3", "dir": "in"}, {"arc": "x2", "dir": "in"}, {"arc": "x1", "dir": "in"}]}
        ]
    }"#;

    #[test]
    fn parses_examples() {
        let u = parse_diagram(UNKNOT).unwrap();
        assert_eq!((u.n_arcs(), u.crossings.len()), (1, 0));
        let t = parse_diagram(TREFOIL).unwrap();
        assert_eq!((t.n_arcs(), t.crossings.len()), (3, 3));
        let th = parse_diagram(THETA).unwrap();
        assert_eq!((th.kind, th.n_strands(), th.vertices.len()), (DiagramKind::Graph, 3, 2));
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_diagram("{\n \"kind\": \"link\",\n oops }") {
            Err(DiagramError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn deleted_crossing_breaks_adjacency() {
        let mut doc: DiagramDoc = serde_json::from_str(TREFOIL).unwrap();
        doc.crossings.remove(0);
        let d = Diagram::from_doc(&doc).unwrap();
        let report = d.validate();
        assert!(report.has(ViolationKind::ArcsNotJoined));
        assert!(report.to_string().contains("`a` and `b`"));
    }

    #[test]
    fn hopf_is_valid() {
        let d = Diagram::from_doc(&serde_json::from_str(HOPF).unwrap()).unwrap();
        assert!(d.validate().is_empty());
    }

    #[test]
    fn dangling_edge_end() {
        let mut doc: DiagramDoc = serde_json::from_str(THETA).unwrap();
        doc.vertices[1].incident.remove(0);
        let report = Diagram::from_doc(&doc).unwrap().validate();
        assert!(report.has(ViolationKind::DanglingEdgeEnd));
        assert!(report.to_string().contains("edge `e3`"));
    }

    #[test]
    fn resolution_errors() {
        let mut doc: DiagramDoc = serde_json::from_str(TREFOIL).unwrap();
        doc.crossings[0].over = "zz".into();
        doc.crossings[1].sign = 2;
        doc.strands[0].arcs.push("a".into());
        let report = Diagram::from_doc(&doc).unwrap_err();
        assert!(report.has(ViolationKind::UnknownArc));
        assert!(report.has(ViolationKind::BadSign));
        assert!(report.has(ViolationKind::DuplicateArc));
    }

    #[test]
    fn reserved_arc_names_rejected() {
        let doc = r#"{"kind":"link","strands":[{"name":"K","arcs":["a b"]}]}"#;
        assert!(matches!(parse_diagram(doc), Err(DiagramError::Invalid(r)) if r.has(ViolationKind::BadArcName)));
    }

    #[test]
    fn vertices_forbidden_on_links() {
        let mut doc: DiagramDoc = serde_json::from_str(UNKNOT).unwrap();
        doc.vertices.push(VertexDoc { incident: vec![IncidenceDoc { arc: "a".into(), dir: Direction::In }] });
        let report = Diagram::from_doc(&doc).unwrap().validate();
        assert!(report.has(ViolationKind::VertexOnLink));
    }

    #[test]
    fn under_arc_reuse_detected() {
        let mut doc: DiagramDoc = serde_json::from_str(TREFOIL).unwrap();
        doc.crossings[1].under_in = "a".into();
        let report = Diagram::from_doc(&doc).unwrap().validate();
        assert!(report.has(ViolationKind::UnderInReused));
        assert!(report.has(ViolationKind::CrossingNotAdjacent));
    }

    #[test]
    fn meridians() {
        let t = parse_diagram(TREFOIL).unwrap();
        assert_eq!(t.meridian(0).unwrap(), FreeWord::gen(0));
        let th = parse_diagram(THETA).unwrap();
        assert_eq!(th.meridian(2).unwrap(), FreeWord::gen(th.arcs().index_of("x3").unwrap()));
        let h = parse_diagram(HOPF).unwrap();
        assert_eq!(h.meridian(1).unwrap(), FreeWord::gen(h.arcs().index_of("b").unwrap()));
        assert!(matches!(h.meridian(2), Err(DiagramError::StrandOutOfRange { .. })));
    }

    #[test]
    fn longitudes() {
        let u = parse_diagram(UNKNOT).unwrap();
        assert!(u.longitude(0).unwrap().is_empty());
        let t = parse_diagram(TREFOIL).unwrap();
        let l = t.longitude(0).unwrap();
        assert_eq!(l.len(), 3);
        assert!(l.letters().iter().all(|x| !x.inverse));
        assert_eq!(t.arcs().render(&l), "c a b");
        let h = parse_diagram(HOPF).unwrap();
        let l = h.longitude(0).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(h.strand_of(l.letters()[0].gen), 1);
        let th = parse_diagram(THETA).unwrap();
        assert!(matches!(th.longitude(0), Err(DiagramError::NotALink)));
    }

    #[test]
    fn render_round_trip() {
        for text in [UNKNOT, TREFOIL, HOPF, THETA] {
            let d = parse_diagram(text).unwrap();
            assert_eq!(parse_diagram(&d.render()).unwrap(), d);
        }
    }

    #[test]
    fn labeling_parse() {
        assert_eq!(NLabeling::parse("3, 3,2").unwrap().values(), &[3, 3, 2]);
        assert!(NLabeling::parse("2,0").is_err());
        assert!(NLabeling::parse("x").is_err());
        let t = parse_diagram(HOPF).unwrap();
        assert!(t.check_labeling(&NLabeling::parse("2").unwrap()).is_err());
    }
}
