//! Quandle and group presentations read off a diagram.
//!
//! The quandle presentation has one generator per arc, one relation per
//! crossing and, for graphs, the vertex relations `y^w = y` instantiated at
//! every generator `y`. Group presentations follow by reading `▷` as
//! conjugation: a relation `x^w = y` becomes the relator `w⁻¹ x w y⁻¹`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, DiagramKind, Direction, NLabeling};
use crate::freeword::{Alphabet, FreeWord, Letter, QuandleTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid diagram:\n{0}")]
    InvalidDiagram(crate::diagram::ValidationReport),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("presentation already carries an N-labeling")]
    AlreadyLabeled,
    #[error("presentation has no N-labeling")]
    Unlabeled,
}

/// `lhs = rhs`, both sides quandle terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuandleRelation {
    pub lhs: QuandleTerm,
    pub rhs: QuandleTerm,
}

impl QuandleRelation {
    /// The group relator `w⁻¹ x w y⁻¹` of `x^w = y` where `y` is a bare
    /// generator, or `(x^w)(y^v)⁻¹` in conjugate form in general.
    pub fn relator(&self) -> FreeWord {
        self.lhs.as_group_element().concat(&self.rhs.as_group_element().invert())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandlePresentation {
    pub generators: Alphabet,
    /// Strand index of every generator.
    pub component_of: Vec<usize>,
    pub n_components: usize,
    pub relations: Vec<QuandleRelation>,
    pub n_labels: Option<NLabeling>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Alphabet,
    pub relators: Vec<FreeWord>,
}

fn checked(d: &Diagram) -> Result<(), PresentationError> {
    let report = d.validate();
    if report.is_empty() {
        Ok(())
    } else {
        Err(PresentationError::InvalidDiagram(report))
    }
}

fn crossing_relations(d: &Diagram) -> impl Iterator<Item = QuandleRelation> + '_ {
    d.crossings.iter().map(|c| QuandleRelation {
        lhs: QuandleTerm::new(c.under_in, FreeWord::letter(Letter::new(c.over, c.sign))),
        rhs: QuandleTerm::generator(c.under_out),
    })
}

/// Vertex words `x_1^{ε_1} ⋯ x_n^{ε_n}` in declared (clockwise)
/// order, `ε = +1` for arcs directed into the vertex.
pub fn vertex_words(d: &Diagram) -> Vec<FreeWord> {
    d.vertices
        .iter()
        .map(|v| {
            v.incident
                .iter()
                .map(|&(a, dir)| Letter::new(a, if dir == Direction::In { 1 } else { -1 }))
                .collect()
        })
        .collect()
}

/// Wirtinger presentation of the fundamental quandle.
pub fn wirtinger_quandle(d: &Diagram) -> Result<QuandlePresentation, PresentationError> {
    checked(d)?;
    let mut relations: Vec<QuandleRelation> = crossing_relations(d).collect();
    for w in vertex_words(d) {
        for y in 0..d.n_arcs() as u32 {
            relations.push(QuandleRelation {
                lhs: QuandleTerm::new(y, w.clone()),
                rhs: QuandleTerm::generator(y),
            });
        }
    }
    Ok(QuandlePresentation {
        generators: d.arcs().clone(),
        component_of: (0..d.n_arcs() as u32).map(|a| d.strand_of(a)).collect(),
        n_components: d.n_strands(),
        relations,
        n_labels: None,
    })
}

/// Adds `x^{y^{n_i}} = x` for every ordered pair of distinct generators with
/// `y` in component `i`.
pub fn n_quandle_presentation(
    q: &QuandlePresentation,
    n: &NLabeling,
) -> Result<QuandlePresentation, PresentationError> {
    if q.n_labels.is_some() {
        return Err(PresentationError::AlreadyLabeled);
    }
    if n.len() != q.n_components {
        return Err(DiagramError::LabelingLength { expected: q.n_components, got: n.len() }.into());
    }
    let mut out = q.clone();
    let s = q.generators.len() as u32;
    for x in 0..s {
        for y in 0..s {
            if x == y {
                continue;
            }
            let power = n.get(q.component_of[y as usize]);
            out.relations.push(QuandleRelation {
                lhs: QuandleTerm::new(x, FreeWord::gen(y).power(power)),
                rhs: QuandleTerm::generator(x),
            });
        }
    }
    out.n_labels = Some(n.clone());
    Ok(out)
}

/// The conjugation group `Conj(Q)`.
pub fn conj_group(q: &QuandlePresentation) -> GroupPresentation {
    GroupPresentation {
        generators: q.generators.clone(),
        relators: q.relations.iter().map(QuandleRelation::relator).collect(),
    }
}

/// `Conj_N(Q)`: `Conj(Q)` plus `g^{n_i}` for every generator `g` in
/// component `i`.
pub fn conj_n_group(q: &QuandlePresentation) -> Result<GroupPresentation, PresentationError> {
    let n = q.n_labels.as_ref().ok_or(PresentationError::Unlabeled)?;
    let mut g = conj_group(q);
    for (gen, &comp) in q.component_of.iter().enumerate() {
        g.relators.push(FreeWord::gen(gen as u32).power(n.get(comp)));
    }
    Ok(g)
}

/// Wirtinger presentation of the complement's fundamental group. Graph
/// vertices contribute the full vertex word as a relator.
pub fn fundamental_group(d: &Diagram) -> Result<GroupPresentation, PresentationError> {
    checked(d)?;
    let mut relators: Vec<FreeWord> = crossing_relations(d).map(|r| r.relator()).collect();
    if d.kind == DiagramKind::Graph {
        relators.extend(vertex_words(d));
    }
    Ok(GroupPresentation { generators: d.arcs().clone(), relators })
}

/// `π₁^N`: the fundamental group modulo `μ_i^{n_i}`, one power per strand.
pub fn quotient_group_n(d: &Diagram, n: &NLabeling) -> Result<GroupPresentation, PresentationError> {
    d.check_labeling(n)?;
    let mut g = fundamental_group(d)?;
    for i in 0..d.n_strands() {
        g.relators.push(d.meridian(i)?.power(n.get(i)));
    }
    Ok(g)
}

impl GroupPresentation {
    pub fn with_relators<I: IntoIterator<Item = FreeWord>>(&self, extra: I) -> GroupPresentation {
        let mut g = self.clone();
        g.relators.extend(extra);
        g
    }
}

impl fmt::Display for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.generators;
        let gens: Vec<&str> = a.generators().iter().map(|g| g.id.as_str()).collect();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} = {}", a.render_term(&r.rhs), a.render_term(&r.lhs)))
            .collect();
        write!(f, "quandle ⟨{} | {}⟩", gens.join(","), rels.join(", "))
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.generators;
        let gens: Vec<&str> = a.generators().iter().map(|g| g.id.as_str()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| a.render(r)).collect();
        write!(f, "group ⟨{} | {}⟩", gens.join(","), rels.join(", "))
    }
}

#[derive(Serialize)]
pub struct TermJson {
    pub base: String,
    pub exponent: String,
}

#[derive(Serialize)]
pub struct RelationJson {
    pub lhs: TermJson,
    pub rhs: TermJson,
}

#[derive(Serialize)]
pub struct QuandlePresentationJson {
    pub generators: Vec<String>,
    pub component_of: Vec<usize>,
    pub relations: Vec<RelationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_labels: Option<Vec<u32>>,
}

#[derive(Serialize)]
pub struct GroupPresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl QuandlePresentation {
    pub fn to_json(&self) -> QuandlePresentationJson {
        let a = &self.generators;
        let term = |t: &QuandleTerm| TermJson { base: a.name(t.base).to_string(), exponent: a.render(&t.exponent) };
        QuandlePresentationJson {
            generators: a.generators().iter().map(|g| g.id.clone()).collect(),
            component_of: self.component_of.clone(),
            relations: self.relations.iter().map(|r| RelationJson { lhs: term(&r.lhs), rhs: term(&r.rhs) }).collect(),
            n_labels: self.n_labels.as_ref().map(|n| n.values().to_vec()),
        }
    }

    pub fn generators_in(&self, component: usize) -> usize {
        self.component_of.iter().filter(|&&c| c == component).count()
    }
}

impl GroupPresentation {
    pub fn to_json(&self) -> GroupPresentationJson {
        GroupPresentationJson {
            generators: self.generators.generators().iter().map(|g| g.id.clone()).collect(),
            relators: self.relators.iter().map(|r| self.generators.render(r)).collect(),
        }
    }
}
