//! Desk-scale search for minimal repairs: smallest sets of triple deletions and
//! insertions after which the initial typing holds.
//!
//! Insertions are drawn from a finite [`InsertionDomain`], so the search is
//! exhaustive for that pool only. Edit sets are checked with the reference
//! validator, in parallel, size by size.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::matching::{CompiledSchema, Sign, Typing};
use crate::rdf::{Graph, Iri, Literal, Term, Triple, Value, XSD};
use crate::schema::{AtomicConstr, ShapeLabel, ValueSet};
use crate::validation::{Budget, ValidateError, Validator};

/// A typing over terms, so it survives rebuilding the graph.
pub type TermTyping = Vec<(Term, ShapeLabel, Sign)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EditSet {
    pub delete: BTreeSet<Triple>,
    pub insert: BTreeSet<Triple>,
}

impl EditSet {
    pub fn size(&self) -> usize {
        self.delete.len() + self.insert.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// The edited triple list, in the original order followed by insertions.
    pub fn apply(&self, triples: &[Triple]) -> Vec<Triple> {
        triples
            .iter()
            .filter(|t| !self.delete.contains(t))
            .cloned()
            .chain(self.insert.iter().cloned())
            .collect()
    }

    /// The edits turning `from` into `to`.
    pub fn diff(from: &[Triple], to: &[Triple]) -> EditSet {
        let a: BTreeSet<&Triple> = from.iter().collect();
        let b: BTreeSet<&Triple> = to.iter().collect();
        EditSet {
            delete: a.difference(&b).map(|t| (*t).clone()).collect(),
            insert: b.difference(&a).map(|t| (*t).clone()).collect(),
        }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "delete": self.delete.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "insert": self.insert.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionDomain {
    pub subjects: Vec<Term>,
    pub properties: Vec<Iri>,
    pub objects: Vec<Term>,
    /// Labels of the fresh blank nodes, in canonical order.
    pub fresh: Vec<String>,
}

/// Stand-in literal for a datatype the schema mentions.
pub fn canonical_literal(datatype: &Iri) -> Literal {
    let lexical = match datatype.as_str().strip_prefix(XSD) {
        Some("integer" | "int" | "long" | "short" | "nonNegativeInteger") => "0",
        Some("decimal") => "0.0",
        Some("double" | "float") => "0.0E0",
        Some("date") => "2000-01-01",
        Some("dateTime") => "2000-01-01T00:00:00",
        Some("boolean") => "false",
        _ => "",
    };
    Literal::typed(lexical, datatype.as_str())
}

impl InsertionDomain {
    /// Graph nodes plus `fresh` new blank nodes; properties of the schema and
    /// the graph; objects also take value set members and one stand-in
    /// literal per datatype of the schema.
    pub fn new(triples: &[Triple], schema: &CompiledSchema, fresh: usize) -> Self {
        let mut nodes: BTreeSet<Term> = BTreeSet::new();
        let mut properties: BTreeSet<Iri> = BTreeSet::new();
        for t in triples {
            nodes.insert(t.subject.clone());
            nodes.insert(t.object.clone());
            properties.insert(t.predicate.clone());
        }
        let mut prefix = String::from("new");
        while nodes
            .iter()
            .any(|n| matches!(n, Term::Blank(b) if b.starts_with(&prefix)))
        {
            prefix.push('_');
        }
        let fresh: Vec<String> = (1..=fresh).map(|i| format!("{prefix}{i}")).collect();
        let mut objects = nodes.clone();
        for shape in schema.shapes() {
            for tc in shape.tcs() {
                properties.insert(tc.prop.iri.clone());
                for a in &tc.value_class {
                    match a {
                        AtomicConstr::ValueSet(ValueSet::Values(vs)) => {
                            for v in vs {
                                match v {
                                    Value::Iri(i) => objects.insert(Term::Iri(i.clone())),
                                    Value::Literal(l) => objects.insert(Term::Literal(l.clone())),
                                    Value::Blank => false,
                                };
                            }
                        }
                        AtomicConstr::ValueSet(ValueSet::Datatype(dt)) => {
                            objects.insert(Term::Literal(canonical_literal(dt)));
                        }
                        _ => {}
                    }
                }
            }
        }
        let blanks = fresh.iter().map(|b| Term::blank(b.clone()));
        let subjects = nodes
            .iter()
            .filter(|n| !n.is_literal())
            .cloned()
            .chain(blanks.clone())
            .collect();
        InsertionDomain {
            subjects,
            properties: properties.into_iter().collect(),
            objects: objects.into_iter().chain(blanks).collect(),
            fresh,
        }
    }

    /// Every insertable triple not already in `triples`.
    pub fn insertions(&self, triples: &[Triple]) -> Vec<Triple> {
        let present: BTreeSet<&Triple> = triples.iter().collect();
        let mut out = Vec::new();
        for s in &self.subjects {
            for p in &self.properties {
                for o in &self.objects {
                    let t = Triple {
                        subject: s.clone(),
                        predicate: p.clone(),
                        object: o.clone(),
                    };
                    if !present.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepairBudget {
    pub max_edits: usize,
    /// Edit sets checked before giving up.
    pub max_edit_sets: u64,
    /// Budget for each validation.
    pub validation: Budget,
}

impl Default for RepairBudget {
    fn default() -> Self {
        RepairBudget {
            max_edits: 4,
            max_edit_sets: 5_000_000,
            validation: Budget {
                max_nodes: 64,
                max_candidates_per_hypothesis: 4096,
                ..Budget::default()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepairError {
    #[error(transparent)]
    Validate(ValidateError),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
}

impl RepairError {
    pub fn is_resource_bound(&self) -> bool {
        match self {
            RepairError::Validate(e) => e.is_resource_bound(),
            RepairError::SearchBudgetExceeded(_) => true,
        }
    }
}

/// All minimum-size repairs, or none within the edit budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairReport {
    pub min_size: Option<usize>,
    pub repairs: Vec<EditSet>,
    pub checked: u64,
}

impl RepairReport {
    pub fn found(&self) -> bool {
        self.min_size.is_some()
    }

    pub fn to_json(&self) -> Json {
        json!({
            "minSize": self.min_size,
            "repairs": self.repairs.iter().map(EditSet::to_json).collect::<Vec<_>>(),
        })
    }
}

fn to_typing(graph: &Graph, typing0: &TermTyping) -> Option<Typing> {
    typing0
        .iter()
        .map(|(t, s, sign)| graph.node(t).map(|n| (n, s.clone(), *sign)))
        .collect()
}

/// Whether `typing0` holds after applying `edits`. A typing entry whose node
/// no longer occurs in the graph makes the edit set fail.
pub fn is_valid_after(
    triples: &[Triple],
    edits: &EditSet,
    schema: &CompiledSchema,
    typing0: &TermTyping,
    budget: Budget,
) -> Result<bool, RepairError> {
    is_valid(&edits.apply(triples), schema, typing0, budget)
}

fn is_valid(triples: &[Triple], schema: &CompiledSchema, typing0: &TermTyping, budget: Budget) -> Result<bool, RepairError> {
    let graph = Graph::build(triples);
    let Some(t0) = to_typing(&graph, typing0) else {
        return Ok(false);
    };
    let v = Validator::with_negative_queries(&graph, schema, &t0).map_err(RepairError::Validate)?;
    match v.reference(&t0, budget) {
        Ok(_) => Ok(true),
        Err(ValidateError::Invalid(_) | ValidateError::IncompatibleInitialTyping { .. }) => Ok(false),
        Err(e) => Err(RepairError::Validate(e)),
    }
}

/// Rename fresh blanks by `perm` (fresh[i] becomes fresh[perm[i]]).
fn rename(edits: &[&Triple], fresh: &BTreeMap<&str, usize>, labels: &[String], perm: &[usize]) -> Vec<Triple> {
    let map = |t: &Term| match t {
        Term::Blank(b) => match fresh.get(b.as_str()) {
            Some(&i) => Term::blank(labels[perm[i]].clone()),
            None => t.clone(),
        },
        _ => t.clone(),
    };
    let mut out: Vec<Triple> = edits
        .iter()
        .map(|t| Triple {
            subject: map(&t.subject),
            predicate: t.predicate.clone(),
            object: map(&t.object),
        })
        .collect();
    out.sort();
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Edit sets over fresh blanks are equal up to renaming; only the smallest
/// renaming is explored.
struct Canon {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    perms: Vec<Vec<usize>>,
}

impl Canon {
    fn new(labels: &[String]) -> Self {
        Canon {
            labels: labels.to_vec(),
            index: labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect(),
            perms: permutations(labels.len()),
        }
    }

    fn is_canonical(&self, inserts: &[&Triple]) -> bool {
        let touches_fresh = inserts.iter().any(|t| {
            [&t.subject, &t.object]
                .iter()
                .any(|x| matches!(x, Term::Blank(b) if self.index.contains_key(b)))
        });
        if !touches_fresh {
            return true;
        }
        let fresh: BTreeMap<&str, usize> = self.index.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        let mut sorted: Vec<Triple> = inserts.iter().map(|t| (*t).clone()).collect();
        sorted.sort();
        self.perms
            .iter()
            .all(|p| rename(inserts, &fresh, &self.labels, p) >= sorted)
    }
}

struct Sweep<'a> {
    triples: &'a [Triple],
    schema: &'a CompiledSchema,
    typing0: &'a TermTyping,
    budget: RepairBudget,
    /// Deletions first, then insertions.
    universe: Vec<Triple>,
    deletions: usize,
    canon: Canon,
    checked: AtomicU64,
}

impl Sweep<'_> {
    fn edit_set(&self, combo: &[usize]) -> Option<EditSet> {
        let inserts: Vec<&Triple> = combo
            .iter()
            .filter(|&&i| i >= self.deletions)
            .map(|&i| &self.universe[i])
            .collect();
        if !self.canon.is_canonical(&inserts) {
            return None;
        }
        let mut e = EditSet::default();
        for &i in combo {
            let t = self.universe[i].clone();
            if i < self.deletions {
                e.delete.insert(t);
            } else {
                e.insert.insert(t);
            }
        }
        Some(e)
    }

    /// Valid edit sets of exactly `size` edits; with `first_only`, stops at
    /// the first one found.
    fn valid_of_size(&self, size: usize, first_only: bool) -> Result<Vec<EditSet>, RepairError> {
        let n = self.universe.len();
        if size > n {
            return Ok(Vec::new());
        }
        if size == 0 {
            self.checked.fetch_add(1, Ordering::Relaxed);
            let ok = is_valid(self.triples, self.schema, self.typing0, self.budget.validation)?;
            return Ok(if ok { vec![EditSet::default()] } else { Vec::new() });
        }
        let next_first = AtomicUsize::new(0);
        let stop = AtomicBool::new(false);
        let found: Mutex<Vec<EditSet>> = Mutex::new(Vec::new());
        let error: Mutex<Option<RepairError>> = Mutex::new(None);
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let first = next_first.fetch_add(1, Ordering::Relaxed);
                    if first + size > n || stop.load(Ordering::Relaxed) {
                        return;
                    }
                    let mut combo: Vec<usize> = (first..first + size).collect();
                    loop {
                        if stop.load(Ordering::Relaxed) {
                            return;
                        }
                        if let Some(e) = self.edit_set(&combo) {
                            let count = self.checked.fetch_add(1, Ordering::Relaxed) + 1;
                            if count > self.budget.max_edit_sets {
                                *error.lock().expect("error lock") = Some(RepairError::SearchBudgetExceeded(format!(
                                    "more than {} edit sets",
                                    self.budget.max_edit_sets
                                )));
                                stop.store(true, Ordering::Relaxed);
                                return;
                            }
                            match is_valid(&e.apply(self.triples), self.schema, self.typing0, self.budget.validation) {
                                Ok(true) => {
                                    found.lock().expect("found lock").push(e);
                                    if first_only {
                                        stop.store(true, Ordering::Relaxed);
                                    }
                                }
                                Ok(false) => {}
                                Err(err) => {
                                    *error.lock().expect("error lock") = Some(err);
                                    stop.store(true, Ordering::Relaxed);
                                    return;
                                }
                            }
                        }
                        if !advance_tail(&mut combo, n) {
                            break;
                        }
                    }
                });
            }
        });
        if let Some(e) = error.into_inner().expect("error lock") {
            return Err(e);
        }
        let mut out = found.into_inner().expect("found lock");
        out.sort();
        Ok(out)
    }
}

/// Next combination keeping `combo[0]` fixed; false when exhausted.
fn advance_tail(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 1 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn sweep<'a>(
    triples: &'a [Triple],
    schema: &'a CompiledSchema,
    typing0: &'a TermTyping,
    budget: RepairBudget,
) -> Sweep<'a> {
    let mut deletions: Vec<Triple> = triples.to_vec();
    deletions.sort();
    deletions.dedup();
    let domain = InsertionDomain::new(triples, schema, budget.max_edits);
    let n_del = deletions.len();
    let mut universe = deletions;
    universe.extend(domain.insertions(triples));
    Sweep {
        triples,
        schema,
        typing0,
        budget,
        universe,
        deletions: n_del,
        canon: Canon::new(&domain.fresh),
        checked: AtomicU64::new(0),
    }
}

/// Breadth-first over edit set sizes `0..=budget.max_edits`: all valid edit
/// sets of the smallest size that has any.
pub fn enumerate_repairs(
    triples: &[Triple],
    schema: &CompiledSchema,
    typing0: &TermTyping,
    budget: RepairBudget,
) -> Result<RepairReport, RepairError> {
    let s = sweep(triples, schema, typing0, budget);
    for size in 0..=budget.max_edits {
        let repairs = s.valid_of_size(size, false)?;
        if !repairs.is_empty() {
            return Ok(RepairReport {
                min_size: Some(size),
                repairs,
                checked: s.checked.load(Ordering::Relaxed),
            });
        }
    }
    Ok(RepairReport {
        min_size: None,
        repairs: Vec::new(),
        checked: s.checked.load(Ordering::Relaxed),
    })
}

/// Whether `repaired` is valid and no edit set smaller than its difference
/// to `triples` is. Exponential by design.
pub fn is_repair(
    triples: &[Triple],
    repaired: &[Triple],
    schema: &CompiledSchema,
    typing0: &TermTyping,
    budget: RepairBudget,
) -> Result<bool, RepairError> {
    let diff = EditSet::diff(triples, repaired);
    if diff.size() > budget.max_edits {
        return Err(RepairError::SearchBudgetExceeded(format!(
            "{} edits, at most {} allowed",
            diff.size(),
            budget.max_edits
        )));
    }
    if !is_valid(repaired, schema, typing0, budget.validation)? {
        return Ok(false);
    }
    let s = sweep(triples, schema, typing0, budget);
    for size in 0..diff.size() {
        if !s.valid_of_size(size, true)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
