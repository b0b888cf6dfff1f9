//! Exclusivity graph of two-qudit stabilizer projectors and the
//! non-contextuality witness built from it.
//!
//! For a face `(u, v)` the vertex set is every `|phi> (x) |k>` with `phi` a
//! single-qudit stabilizer state whose Wigner line misses `(u, v)`, plus every
//! maximally entangled two-qudit stabilizer state. Orthogonal projectors are
//! joined by an edge.

pub mod mis;

use num_complex::Complex;
use rayon::prelude::*;

use crate::dense::{inner, ket_from_rank_one, roots_of_unity, CMatrix};
use crate::pauli::weyl_operator;
use crate::wigner::{phase_point_operator, wigner_from_density, WignerFunction};
use crate::zd::{Prime, SymplecticVector};

pub use mis::{max_independent_set, MisResult, DEFAULT_BUDGET};

/// `Tr(P Q)` below this counts as orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Slack on the `d^3` bound before a value counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Eigenstate of `T(a, b)` with eigenvalue `w^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerState {
    pub direction: (u32, u32),
    pub eigenvalue: u32,
    pub ket: Vec<Complex<f64>>,
}

impl StabilizerState {
    pub fn projector(&self) -> CMatrix<f64> {
        CMatrix::projector(&self.ket)
    }

    /// The points where its Wigner function is `1/d`: `a x - b z = k`.
    pub fn on_line(&self, z: u32, x: u32, d: Prime) -> bool {
        let (a, b) = self.direction;
        d.sub(d.mul(a, x), d.mul(b, z)) == self.eigenvalue
    }
}

/// Projector `d^-1 sum_j w^{-kj} T(j v)` onto the `w^k` eigenspace of `T(v)`.
fn eigenprojector(label: &SymplecticVector, k: u32) -> CMatrix<f64> {
    let d = label.modulus();
    let w = roots_of_unity::<f64>(d.get());
    let dim = d.as_usize().pow(label.num_qudits() as u32);
    let mut proj = CMatrix::zeros(dim, dim);
    for j in 0..d.get() {
        let phase = w[d.neg(d.mul(k, j)) as usize] / d.get() as f64;
        proj.add_scaled(&weyl_operator(&label.scale(j)), phase);
    }
    proj
}

/// All `d(d+1)` single-qudit stabilizer states: the eigenbases of `Z` and of
/// `Z^c X` for every `c`.
pub fn enumerate_single_qudit_stabilizer_states(d: Prime) -> Vec<StabilizerState> {
    let directions = std::iter::once((1, 0)).chain((0..d.get()).map(|c| (c, 1)));
    directions
        .flat_map(|(a, b)| {
            let label = SymplecticVector::new(d, vec![a], vec![b]).expect("single qudit");
            (0..d.get()).map(move |k| StabilizerState {
                direction: (a, b),
                eigenvalue: k,
                ket: ket_from_rank_one(&eigenprojector(&label, k)),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    /// Index into [`enumerate_single_qudit_stabilizer_states`] and the ancilla ket.
    Separable { state: usize, ket: u32 },
    /// Choi state of the Clifford with symplectic part `[[s00, s01], [s10, s11]]`
    /// and translation `t`.
    Entangled {
        symplectic: [u32; 4],
        translation: (u32, u32),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Separable,
    Entangled,
}

/// A rank-one two-qudit projector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorVertex {
    pub label: VertexLabel,
    pub ket: Vec<Complex<f64>>,
    pub matrix: CMatrix<f64>,
}

impl ProjectorVertex {
    fn from_ket(label: VertexLabel, ket: Vec<Complex<f64>>) -> Self {
        let matrix = CMatrix::projector(&ket);
        ProjectorVertex { label, ket, matrix }
    }

    pub fn kind(&self) -> VertexKind {
        match self.label {
            VertexLabel::Separable { .. } => VertexKind::Separable,
            VertexLabel::Entangled { .. } => VertexKind::Entangled,
        }
    }

    /// `Tr(P Q) = |<p|q>|^2`.
    pub fn overlap(&self, other: &ProjectorVertex) -> f64 {
        inner(&self.ket, &other.ket).norm_sqr()
    }
}

/// `|phi> (x) |k>` for every stabilizer state `phi` with no Wigner weight on
/// `(u, v)`.
pub fn separable_projectors(d: Prime, u: u32, v: u32) -> Vec<ProjectorVertex> {
    let (u, v) = (u % d.get(), v % d.get());
    let q = d.as_usize();
    let mut out = Vec::new();
    for (idx, state) in enumerate_single_qudit_stabilizer_states(d)
        .iter()
        .enumerate()
    {
        if state.on_line(u, v, d) {
            continue;
        }
        for k in 0..d.get() {
            let ket = (0..q * q)
                .map(|i| {
                    if i % q == k as usize {
                        state.ket[i / q]
                    } else {
                        Complex::new(0.0, 0.0)
                    }
                })
                .collect();
            out.push(ProjectorVertex::from_ket(
                VertexLabel::Separable { state: idx, ket: k },
                ket,
            ));
        }
    }
    out
}

/// Elements `[[a, b], [c, e]]` of `SL(2, Z_d)` in lexicographic order.
pub fn special_linear_group(d: Prime) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..d.get() {
        for b in 0..d.get() {
            for c in 0..d.get() {
                for e in 0..d.get() {
                    if d.sub(d.mul(a, e), d.mul(b, c)) == 1 {
                        out.push([a, b, c, e]);
                    }
                }
            }
        }
    }
    out
}

/// Choi states `(U (x) 1)|Phi>` of all `d^3 (d^2 - 1)` single-qudit Cliffords,
/// built as `d^-2 sum_w w^{<t, Sw>} T(Sw) (x) T(w)^*`.
pub fn entangled_projectors(d: Prime) -> Vec<ProjectorVertex> {
    let labels: Vec<_> = special_linear_group(d)
        .into_iter()
        .flat_map(|s| (0..d.get()).flat_map(move |t0| (0..d.get()).map(move |t1| (s, (t0, t1)))))
        .collect();
    labels
        .into_par_iter()
        .map(|(s, t)| {
            let mat = choi_projector(d, s, t);
            ProjectorVertex::from_ket(
                VertexLabel::Entangled {
                    symplectic: s,
                    translation: t,
                },
                ket_from_rank_one(&mat),
            )
        })
        .collect()
}

fn choi_projector(d: Prime, s: [u32; 4], t: (u32, u32)) -> CMatrix<f64> {
    let w = roots_of_unity::<f64>(d.get());
    let q = d.as_usize();
    let mut out = CMatrix::zeros(q * q, q * q);
    let norm = 1.0 / (q * q) as f64;
    for a in 0..d.get() {
        for b in 0..d.get() {
            let sa = d.add(d.mul(s[0], a), d.mul(s[1], b));
            let sb = d.add(d.mul(s[2], a), d.mul(s[3], b));
            let image = SymplecticVector::new(d, vec![sa], vec![sb]).unwrap();
            let orig = SymplecticVector::new(d, vec![a], vec![b]).unwrap();
            let phase = d.sub(d.mul(t.0, sb), d.mul(t.1, sa));
            let term = weyl_operator::<f64>(&image).kron(&weyl_operator::<f64>(&orig).conj());
            out.add_scaled(&term, w[phase as usize] * norm);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExclusivityGraph {
    pub modulus: Prime,
    pub face: (u32, u32),
    pub vertices: Vec<ProjectorVertex>,
    /// `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// Separable vertices first, then entangled; edges between orthogonal pairs.
pub fn build_graph(d: Prime, u: u32, v: u32) -> ExclusivityGraph {
    let mut vertices = separable_projectors(d, u, v);
    vertices.extend(entangled_projectors(d));
    let edges = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let vertices = &vertices;
            (i + 1..vertices.len())
                .filter(move |&j| vertices[i].overlap(&vertices[j]) < ORTHOGONALITY_TOL)
                .map(move |j| (i, j))
        })
        .collect();
    ExclusivityGraph {
        modulus: d,
        face: (u % d.get(), v % d.get()),
        vertices,
        edges,
    }
}

impl ExclusivityGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// The literal sum of every vertex projector.
    pub fn sigma(&self) -> CMatrix<f64> {
        sum_matrices(self.modulus, &self.vertices)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut members = vec![false; self.num_vertices()];
        for &i in set {
            if i >= members.len() || members[i] {
                return false;
            }
            members[i] = true;
        }
        !self.edges.iter().any(|&(i, j)| members[i] && members[j])
    }

    /// Two-qudit Wigner function of every vertex.
    pub fn vertex_wigner_functions(&self) -> Vec<WignerFunction<f64>> {
        self.vertices
            .par_iter()
            .map(|vtx| {
                wigner_from_density(&vtx.matrix, self.modulus, 2).expect("two-qudit projector")
            })
            .collect()
    }

    /// `p edge V E` followed by one `e i j` line per edge, 1-indexed.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!(
            "c exclusivity graph d={} face=({},{})\np edge {} {}\n",
            self.modulus,
            self.face.0,
            self.face.1,
            self.num_vertices(),
            self.num_edges()
        );
        for &(i, j) in &self.edges {
            out.push_str(&format!("e {} {}\n", i + 1, j + 1));
        }
        out
    }
}

fn sum_matrices(d: Prime, vertices: &[ProjectorVertex]) -> CMatrix<f64> {
    let dim = d.as_usize().pow(2);
    let mut out = CMatrix::zeros(dim, dim);
    for vtx in vertices {
        out = &out + &vtx.matrix;
    }
    out
}

/// The literal projector sum for a face, without building the edge list.
pub fn projector_sum(d: Prime, u: u32, v: u32) -> CMatrix<f64> {
    let mut vertices = separable_projectors(d, u, v);
    vertices.extend(entangled_projectors(d));
    sum_matrices(d, &vertices)
}

/// `(d^3 1 - A(u, v)) (x) 1`.
pub fn sigma_closed_form(d: Prime, u: u32, v: u32) -> CMatrix<f64> {
    let q = d.as_usize();
    let cube = CMatrix::identity(q).scale_real((q * q * q) as f64);
    let a = phase_point_operator::<f64>(d, u % d.get(), v % d.get()).matrix;
    (&cube - &a).kron(&CMatrix::identity(q))
}

/// Largest entrywise deviation between the projector sum and its closed form.
pub fn sigma_identity_check(d: Prime, u: u32, v: u32) -> f64 {
    build_graph(d, u, v)
        .sigma()
        .max_abs_diff(&sigma_closed_form(d, u, v))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub face: (u32, u32),
    /// `Tr(Sigma rho (x) sigma)`.
    pub value: f64,
    pub bound: f64,
    pub contextual: bool,
    /// `d^3 - d W_rho(u, v)`, from the Wigner function alone.
    pub closed_form: f64,
}

/// Evaluates the witness on `rho (x) sigma` using the literal projector sum.
pub fn witness_value(
    rho: &CMatrix<f64>,
    sigma: &CMatrix<f64>,
    d: Prime,
    u: u32,
    v: u32,
) -> WitnessReport {
    let sum = projector_sum(d, u, v);
    witness_from_sigma(&sum, rho, sigma, d, (u % d.get(), v % d.get()))
}

/// [`witness_value`] with a precomputed projector sum.
pub fn witness_from_sigma(
    sum: &CMatrix<f64>,
    rho: &CMatrix<f64>,
    sigma: &CMatrix<f64>,
    d: Prime,
    face: (u32, u32),
) -> WitnessReport {
    let value = sum.trace_product(&rho.kron(sigma)).re;
    let q = d.as_usize() as f64;
    let bound = q * q * q;
    let w = wigner_from_density(rho, d, 1).expect("single-qudit state");
    WitnessReport {
        face,
        value,
        bound,
        contextual: value > bound + VIOLATION_TOL,
        closed_form: bound - q * w.at(face.0, face.1),
    }
}

/// Vertices whose outcome is 1 at the two-qudit ontic point
/// `(z, x) (x) (z', x')`, i.e. whose Wigner support contains it.
pub fn ontological_independent_set(
    graph: &ExclusivityGraph,
    system: (u32, u32),
    ancilla: (u32, u32),
) -> Vec<usize> {
    OntologicalModel::new(graph).independent_set(system, ancilla)
}

/// Cached vertex Wigner functions for repeated ontic-point queries.
#[derive(Debug, Clone)]
pub struct OntologicalModel {
    modulus: Prime,
    wigner: Vec<WignerFunction<f64>>,
}

impl OntologicalModel {
    pub fn new(graph: &ExclusivityGraph) -> Self {
        OntologicalModel {
            modulus: graph.modulus,
            wigner: graph.vertex_wigner_functions(),
        }
    }

    pub fn independent_set(&self, system: (u32, u32), ancilla: (u32, u32)) -> Vec<usize> {
        let d = self.modulus.get();
        let z = [system.0 % d, ancilla.0 % d];
        let x = [system.1 % d, ancilla.1 % d];
        (0..self.wigner.len())
            .filter(|&i| self.wigner[i].at_point(&z, &x) > 1e-9)
            .collect()
    }
}
