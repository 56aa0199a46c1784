//! Generalized chemical reaction networks: a digraph whose vertices carry a
//! stoichiometric complex and whose source vertices carry a kinetic complex.
//!
//! Vertices and species are indexed from zero internally. Vertex numbers in
//! error values and text output are one-based.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratlinalg::Matrix;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::RationalMatrix;

/// A formal linear combination of species with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Complex {
    coeffs: BTreeMap<usize, Rational>,
}

impl Complex {
    /// Merges repeated species and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::new();
        for (s, c) in terms {
            *coeffs.entry(s).or_insert_with(Rational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Complex { coeffs }
    }

    pub fn zero() -> Self {
        Complex::default()
    }

    /// Parses `<rat> <species> (+ <rat> <species>)*` or `0`.
    pub fn parse(text: &str, species: &[String]) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["0"] {
            return Ok(Complex::zero());
        }
        let invalid = || Error::InvalidComplex(text.trim().to_string());
        if tokens.is_empty() || tokens.len() % 3 != 2 {
            return Err(invalid());
        }
        let mut terms = Vec::new();
        for (k, chunk) in tokens.chunks(3).enumerate() {
            let (coef, name) = (chunk[0], chunk[1]);
            if k > 0 && tokens[3 * k - 1] != "+" {
                return Err(invalid());
            }
            let c = parse_rational(coef).ok_or_else(invalid)?;
            let s = species
                .iter()
                .position(|sp| sp == name)
                .ok_or_else(|| Error::UnknownSpecies(name.to_string()))?;
            terms.push((s, c));
        }
        Ok(Complex::new(terms))
    }

    pub fn coefficient(&self, species: usize) -> Rational {
        self.coeffs.get(&species).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        (0..n).map(|i| self.coefficient(i)).collect()
    }

    /// Text form accepted by [`Complex::parse`].
    pub fn format(&self, species: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(&s, c)| format!("{} {}", format_rational(c), species[s]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A directed edge `source -> target` (zero-based) labelled by a rate symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub symbol: String,
}

/// A validated generalized chemical reaction network. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    species: Vec<String>,
    stoich: Vec<Complex>,
    kinetic: Vec<Option<Complex>>,
    edges: Vec<Edge>,
}

/// Validates and assembles a network.
///
/// `kinetic[v]` must be present for every source vertex; entries for vertices
/// without outgoing edges are dropped.
pub fn make_network(
    species: Vec<String>,
    stoich: Vec<Complex>,
    kinetic: Vec<Option<Complex>>,
    edges: Vec<Edge>,
) -> Result<Network> {
    let mut seen_species = BTreeSet::new();
    for s in &species {
        if !seen_species.insert(s.as_str()) {
            return Err(Error::DuplicateSpecies(s.clone()));
        }
    }
    let m = stoich.len();
    if kinetic.len() != m {
        return Err(Error::WrongLength { expected: m, actual: kinetic.len() });
    }
    let n = species.len();
    for c in stoich.iter().chain(kinetic.iter().flatten()) {
        if let Some((s, _)) = c.terms().find(|&(s, _)| s >= n) {
            return Err(Error::UnknownSpecies(format!("#{s}")));
        }
    }
    let mut pairs = BTreeSet::new();
    let mut symbols = BTreeSet::new();
    for e in &edges {
        for v in [e.source, e.target] {
            if v >= m {
                return Err(Error::UnknownVertex(v + 1));
            }
        }
        if e.source == e.target {
            return Err(Error::SelfLoop { source_vertex: e.source + 1, target: e.target + 1 });
        }
        if !pairs.insert((e.source, e.target)) {
            return Err(Error::DuplicateEdge { source_vertex: e.source + 1, target: e.target + 1 });
        }
        if !symbols.insert(e.symbol.as_str()) {
            return Err(Error::DuplicateRateSymbol(e.symbol.clone()));
        }
    }
    let sources: BTreeSet<usize> = edges.iter().map(|e| e.source).collect();
    let mut kinetic = kinetic;
    for (v, k) in kinetic.iter_mut().enumerate() {
        if sources.contains(&v) {
            if k.is_none() {
                return Err(Error::MissingKineticComplex(v + 1));
            }
        } else if k.take().is_some() {
            log::warn!("vertex {} is not a source; its kinetic complex is ignored", v + 1);
        }
    }
    Ok(Network { species, stoich, kinetic, edges })
}

impl Network {
    pub fn builder(species: &[&str]) -> NetworkBuilder {
        NetworkBuilder {
            species: species.iter().map(|s| s.to_string()).collect(),
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    /// Number of species `n`.
    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    /// Number of vertices `m`.
    pub fn num_vertices(&self) -> usize {
        self.stoich.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn stoich_complex(&self, v: usize) -> &Complex {
        &self.stoich[v]
    }

    /// Kinetic complex of a source vertex; `None` for non-sources.
    pub fn kinetic_complex(&self, v: usize) -> Option<&Complex> {
        self.kinetic[v].as_ref()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.kinetic[v].is_some()
    }

    pub fn rate_symbols(&self) -> Vec<&str> {
        self.edges.iter().map(|e| e.symbol.as_str()).collect()
    }

    pub fn edge_index(&self, symbol: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.symbol == symbol)
    }

    /// Stoichiometric matrix `Y` (species × vertices).
    pub fn stoich_matrix(&self) -> RationalMatrix {
        Matrix::from_fn(self.num_species(), self.num_vertices(), |i, j| {
            self.stoich[j].coefficient(i)
        })
    }

    /// Kinetic matrix `Ỹ`; columns of non-source vertices are zero.
    pub fn kinetic_matrix(&self) -> RationalMatrix {
        Matrix::from_fn(self.num_species(), self.num_vertices(), |i, j| {
            self.kinetic[j]
                .as_ref()
                .map_or_else(Rational::zero, |c| c.coefficient(i))
        })
    }

    /// Reaction vector `y(target) - y(source)` of edge `e`.
    pub fn reaction_vector(&self, e: usize) -> Vec<Rational> {
        let Edge { source, target, .. } = &self.edges[e];
        (0..self.num_species())
            .map(|i| self.stoich[*target].coefficient(i) - self.stoich[*source].coefficient(i))
            .collect()
    }

    /// Replaces the kinetic complexes of source vertices. Used to instantiate
    /// kinetic orders on a fixed graph.
    pub fn with_kinetic(&self, kinetic: Vec<Option<Complex>>) -> Result<Network> {
        make_network(
            self.species.clone(),
            self.stoich.clone(),
            kinetic,
            self.edges.clone(),
        )
    }
}

/// Convenience builder using the text syntax for complexes. Vertex numbers
/// passed to [`NetworkBuilder::edge`] are one-based.
#[derive(Clone, Debug)]
pub struct NetworkBuilder {
    species: Vec<String>,
    vertices: Vec<(String, Option<String>)>,
    edges: Vec<(usize, usize, String)>,
}

impl NetworkBuilder {
    pub fn vertex(mut self, stoich: &str, kinetic: Option<&str>) -> Self {
        self.vertices.push((stoich.to_string(), kinetic.map(str::to_string)));
        self
    }

    /// A vertex whose kinetic complex equals its stoichiometric complex.
    pub fn mass_action_vertex(self, stoich: &str) -> Self {
        self.vertex(stoich, Some(stoich))
    }

    pub fn edge(mut self, source: usize, target: usize, symbol: &str) -> Self {
        self.edges.push((source, target, symbol.to_string()));
        self
    }

    pub fn build(self) -> Result<Network> {
        let mut stoich = Vec::new();
        let mut kinetic = Vec::new();
        for (s, k) in &self.vertices {
            stoich.push(Complex::parse(s, &self.species)?);
            kinetic.push(k.as_deref().map(|k| Complex::parse(k, &self.species)).transpose()?);
        }
        let mut edges = Vec::new();
        for (i, j, sym) in self.edges {
            if i == 0 || j == 0 {
                return Err(Error::UnknownVertex(0));
            }
            edges.push(Edge { source: i - 1, target: j - 1, symbol: sym });
        }
        make_network(self.species, stoich, kinetic, edges)
    }
}

/// Strictly positive rate constants, one per edge in edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateAssignment {
    values: Vec<Rational>,
}

impl RateAssignment {
    pub fn new(net: &Network, values: Vec<Rational>) -> Result<Self> {
        if values.len() != net.edges().len() {
            return Err(Error::WrongLength { expected: net.edges().len(), actual: values.len() });
        }
        if let Some(e) = values.iter().position(|v| !v.is_positive()) {
            return Err(Error::NonPositiveRate(net.edges()[e].symbol.clone()));
        }
        Ok(RateAssignment { values })
    }

    pub fn uniform(net: &Network, value: Rational) -> Result<Self> {
        RateAssignment::new(net, vec![value; net.edges().len()])
    }

    /// Looks every edge symbol up in `by_symbol`. Unknown symbols are errors.
    pub fn from_symbols(net: &Network, by_symbol: &HashMap<String, Rational>) -> Result<Self> {
        for sym in by_symbol.keys() {
            if net.edge_index(sym).is_none() {
                return Err(Error::UnknownRateSymbol(sym.clone()));
            }
        }
        let values = net
            .edges()
            .iter()
            .map(|e| {
                by_symbol
                    .get(&e.symbol)
                    .cloned()
                    .ok_or_else(|| Error::MissingRate(e.symbol.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        RateAssignment::new(net, values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, edge: usize) -> &Rational {
        &self.values[edge]
    }
}
