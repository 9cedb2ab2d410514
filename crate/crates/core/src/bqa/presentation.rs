use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::quiver::{Path, Quiver};

/// A uniform relation: a nonzero combination of parallel paths, each of
/// length at least two. Terms are sorted by the global path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    source: usize,
    target: usize,
    terms: Vec<(Path, Scalar)>,
}

impl Relation {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> &[(Path, Scalar)] {
        &self.terms
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(p, _)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(p, _)| p.len()).max().unwrap_or(0)
    }

    /// The relation in input syntax.
    pub fn render(&self, q: &Quiver) -> String {
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&q.path_syntax(p));
        }
        s
    }
}

/// Quiver, ground field and generators of the ideal `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    field: Field,
    relations: Vec<Relation>,
}

impl Presentation {
    /// Normalizes raw generators: collects like terms, splits every generator
    /// into its uniform components `e_y·r·e_x`, drops zero components, makes
    /// monomial generators monic and removes monomial generators containing
    /// another monomial generator as a subpath.
    pub fn new(quiver: Quiver, field: Field, generators: Vec<Vec<(Path, Scalar)>>) -> Result<Presentation> {
        let mut relations: Vec<Relation> = Vec::new();
        for gen in generators {
            let mut combined: BTreeMap<Path, Scalar> = BTreeMap::new();
            for (p, c) in gen {
                if c.field() != field {
                    return Err(Error::InvalidField("coefficient from another field".into()));
                }
                let e = combined.entry(p).or_insert_with(|| field.zero());
                *e = &*e + &c;
            }
            let mut by_ends: BTreeMap<(usize, usize), Vec<(Path, Scalar)>> = BTreeMap::new();
            for (p, c) in combined.into_iter().filter(|(_, c)| !c.is_zero()) {
                if p.len() < 2 {
                    return Err(Error::ShortRelation {
                        line: 0,
                        term: quiver.path_string(&p),
                        length: p.len(),
                    });
                }
                by_ends.entry((p.target(), p.source())).or_default().push((p, c));
            }
            for ((target, source), mut terms) in by_ends {
                if terms.len() == 1 {
                    terms[0].1 = field.one();
                }
                relations.push(Relation { source, target, terms });
            }
        }
        let monomials: Vec<Path> = relations
            .iter()
            .filter(|r| r.is_monomial())
            .map(|r| r.terms[0].0.clone())
            .collect();
        let mut kept: Vec<Path> = Vec::new();
        relations.retain(|r| {
            if !r.is_monomial() {
                return true;
            }
            let p = &r.terms[0].0;
            let redundant =
                kept.contains(p) || monomials.iter().any(|m| m.len() < p.len() && p.contains(m));
            if !redundant {
                kept.push(p.clone());
            }
            !redundant
        });
        Ok(Presentation { quiver, field, relations })
    }

    /// Monomial presentation `kQ/<Z>`.
    pub fn monomial(quiver: Quiver, field: Field, paths: Vec<Path>) -> Result<Presentation> {
        let gens = paths.into_iter().map(|p| vec![(p, field.one())]).collect();
        Presentation::new(quiver, field, gens)
    }

    /// The path algebra `kQ` itself.
    pub fn hereditary(quiver: Quiver, field: Field) -> Presentation {
        Presentation { quiver, field, relations: Vec::new() }
    }

    /// Radical square zero presentation `kQ/F²`.
    pub fn radical_square_zero(quiver: Quiver, field: Field) -> Presentation {
        let q2: Vec<Path> = crate::quiver::enumerate_paths(&quiver, 2)
            .into_iter()
            .filter(|p| p.len() == 2)
            .collect();
        Presentation::monomial(quiver, field, q2).expect("paths of length two are valid relations")
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    /// Every generator is a single path.
    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Relation::is_monomial)
    }

    /// The generating paths `Z` of a monomial presentation.
    pub fn monomial_paths(&self) -> Option<Vec<Path>> {
        if !self.is_monomial() {
            return None;
        }
        Some(self.relations.iter().map(|r| r.terms[0].0.clone()).collect())
    }

    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(Relation::max_len).max().unwrap_or(0)
    }
}
