//! Coordinates on a charge lattice, M-dominance cones, Z-connectivity inside cones and the
//! stabilization constants for families of dominant charges.
//!
//! With L_r the lattice of charges reachable from r by the translations τ̇_i, the map φ sends
//! L_r ⊗ ℝ to ℝ^{l-1} so that τ̇_i becomes the unit step in coordinate i and M-dominant charges
//! become the cone {x : A·x ≥ b(M)}, A the Cartan matrix of type A_{l-1}.

use std::collections::{HashSet, VecDeque};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("charges {0:?} and {1:?} lie in different lattices")]
    ResidueMismatch(Vec<i64>, Vec<i64>),
    #[error("point {0:?} is not integral")]
    NotIntegral(Vec<Rational64>),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Q = Rational64;

fn q(x: i64) -> Q {
    Q::from_integer(x)
}

/// Orientation of a cone: A·x ≥ b or A·x ≤ b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    AtLeast,
    AtMost,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    #[serde(serialize_with = "ser_vec")]
    pub b: Vec<Q>,
    pub orientation: Orientation,
}

fn ser_vec<S: serde::Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Cone {
    pub fn at_least(b: Vec<Q>) -> Self {
        Cone { b, orientation: Orientation::AtLeast }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        let ax = cartan_apply(x);
        ax.iter().zip(&self.b).all(|(a, b)| match self.orientation {
            Orientation::AtLeast => a >= b,
            Orientation::AtMost => a <= b,
        })
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.contains(&x.iter().map(|&v| q(v)).collect::<Vec<_>>())
    }
}

/// The (l-1)×(l-1) Cartan matrix of type A and its exact inverse.
#[derive(Clone, Debug, Serialize)]
pub struct CartanData {
    pub a: Vec<Vec<i64>>,
    #[serde(serialize_with = "ser_mat")]
    pub inverse: Vec<Vec<Q>>,
}

fn ser_mat<S: serde::Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

impl CartanData {
    pub fn new(l: usize) -> Self {
        let d = l.saturating_sub(1);
        let a = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        // (A⁻¹)_{ij} = min(i,j)·(l − max(i,j))/l, 1-based
        let inverse = (1..=d)
            .map(|i| (1..=d).map(|j| Q::new((i.min(j) * (l - i.max(j))) as i64, l as i64)).collect())
            .collect();
        CartanData { a, inverse }
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    /// Exact determinant by Gaussian elimination over ℚ.
    pub fn determinant(&self) -> Q {
        let d = self.size();
        let mut m: Vec<Vec<Q>> = self.a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let mut det = Q::one();
        for c in 0..d {
            let Some(p) = (c..d).find(|&r| !m[r][c].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c];
            for r in c + 1..d {
                let f = m[r][c] / m[c][c];
                for k in c..d {
                    let v = m[c][k];
                    m[r][k] -= f * v;
                }
            }
        }
        det
    }

    pub fn apply_inverse(&self, b: &[Q]) -> Vec<Q> {
        self.inverse.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect()
    }
}

/// A·x for the tridiagonal Cartan matrix, x_0 = x_l = 0.
pub fn cartan_apply(x: &[Q]) -> Vec<Q> {
    let d = x.len();
    (0..d)
        .map(|i| {
            let left = if i > 0 { x[i - 1] } else { Q::zero() };
            let right = if i + 1 < d { x[i + 1] } else { Q::zero() };
            q(2) * x[i] - left - right
        })
        .collect()
}

/// φ(s): x_i = (1/n) Σ_{j≤i} (s_j − r_j), 1 ≤ i ≤ l−1.
pub fn phi(charges: &[i64], r: &[i64], n: usize) -> Vec<Q> {
    assert_eq!(charges.len(), r.len());
    let mut acc = 0i64;
    let mut out = Vec::with_capacity(r.len().saturating_sub(1));
    for j in 0..r.len().saturating_sub(1) {
        acc += charges[j] - r[j];
        out.push(Q::new(acc, n as i64));
    }
    out
}

/// ψ(x): s_i = n(x_i − x_{i−1}) + r_i with x_0 = x_l = 0. Returns none off the lattice.
pub fn psi(x: &[Q], r: &[i64], n: usize) -> Option<Vec<i64>> {
    let l = r.len();
    assert_eq!(x.len() + 1, l.max(1));
    let at = |i: usize| if i == 0 || i == l { Q::zero() } else { x[i - 1] };
    (1..=l)
        .map(|i| {
            let v = q(n as i64) * (at(i) - at(i - 1)) + q(r[i - 1]);
            v.is_integer().then(|| v.to_integer())
        })
        .collect()
}

pub fn psi_int(x: &[i64], r: &[i64], n: usize) -> Vec<i64> {
    psi(&x.iter().map(|&v| q(v)).collect::<Vec<_>>(), r, n).expect("integral points map to charges")
}

/// Same lattice L_r: equal sums and componentwise congruent mod n.
pub fn same_lattice(s: &[i64], t: &[i64], n: usize) -> bool {
    s.len() == t.len()
        && s.iter().sum::<i64>() == t.iter().sum::<i64>()
        && s.iter().zip(t).all(|(a, b)| (a - b).rem_euclid(n as i64) == 0)
}

/// s_i − s_{i+1} ≥ M for 1 ≤ i ≤ l−1.
pub fn is_dominant(charges: &[i64], m: i64) -> bool {
    charges.windows(2).all(|w| w[0] - w[1] >= m)
}

/// b(M)_i = (M + r_{i+1} − r_i)/n, so that φ maps the M-dominant charges of L_r onto C_{b(M)}.
pub fn dominance_cone(r: &[i64], m: i64, n: usize) -> Cone {
    Cone::at_least(r.windows(2).map(|w| Q::new(m + w[1] - w[0], n as i64)).collect())
}

/// The vertex ω = A⁻¹·b.
pub fn cone_vertex(b: &[Q]) -> Vec<Q> {
    CartanData::new(b.len() + 1).apply_inverse(b)
}

fn ceil(x: Q) -> Q {
    x.ceil()
}

/// An explicit c with every two integral points of C_b Z-connected inside C_c.
///
/// ω = A⁻¹b, ω' = A⁻¹(b + 2·1), ω'' = max(ω', ⌈ω⌉) with ω''_0 = ω''_l = 0, and
/// c_i = −ω''_{i−1} + 2ω_i − ω''_{i+1}.
pub fn constructive_c(b: &[Q]) -> Vec<Q> {
    let d = b.len();
    let omega = cone_vertex(b);
    let shifted: Vec<Q> = b.iter().map(|x| x + q(2)).collect();
    let omega1 = cone_vertex(&shifted);
    let omega2: Vec<Q> = omega1.iter().zip(&omega).map(|(a, w)| (*a).max(ceil(*w))).collect();
    let at = |i: isize| if i < 0 || i as usize >= d { Q::zero() } else { omega2[i as usize] };
    (0..d).map(|i| -at(i as isize - 1) + q(2) * omega[i] - at(i as isize + 1)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub connected: bool,
    /// The search reached the edge of the box; a negative answer may be an artifact of the box.
    pub box_too_small: bool,
    pub visited: usize,
}

fn bfs(start: &[i64], goal: Option<&[i64]>, cone: &Cone, lo: &[i64], hi: &[i64]) -> (bool, bool, usize) {
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    let mut touched = false;
    while let Some(p) = queue.pop_front() {
        if Some(p.as_slice()) == goal {
            return (true, touched, seen.len());
        }
        for j in 0..p.len() {
            for step in [-1, 1] {
                let mut nb = p.clone();
                nb[j] += step;
                if nb[j] < lo[j] || nb[j] > hi[j] {
                    if cone.contains_int(&nb) {
                        touched = true;
                    }
                    continue;
                }
                if !seen.contains(&nb) && cone.contains_int(&nb) {
                    seen.insert(nb.clone());
                    queue.push_back(nb);
                }
            }
        }
    }
    (false, touched, seen.len())
}

/// Is there a path of unit steps ±ε_j from x to y through integral points of the cone, inside
/// the box spanned by x and y enlarged by `radius`?
pub fn z_connected(x: &[i64], y: &[i64], cone: &Cone, radius: i64) -> Result<Connectivity, ConeError> {
    if x.len() != cone.dim() || y.len() != cone.dim() {
        return Err(ConeError::Dimension(format!("points of length {} and {} in a cone of dimension {}", x.len(), y.len(), cone.dim())));
    }
    if !cone.contains_int(x) || !cone.contains_int(y) {
        return Ok(Connectivity { connected: false, box_too_small: false, visited: 0 });
    }
    let lo: Vec<i64> = x.iter().zip(y).map(|(a, b)| a.min(b) - radius).collect();
    let hi: Vec<i64> = x.iter().zip(y).map(|(a, b)| a.max(b) + radius).collect();
    let (found, touched_x, vx) = bfs(x, Some(y), cone, &lo, &hi);
    if found {
        return Ok(Connectivity { connected: true, box_too_small: false, visited: vx });
    }
    // a component closed inside the box on either side certifies disconnection
    let (_, touched_y, vy) = bfs(y, None, cone, &lo, &hi);
    Ok(Connectivity { connected: false, box_too_small: touched_x && touched_y, visited: vx + vy })
}

/// s ≡_M t: a chain of τ̇-steps from s to t through M-dominant charges, searched within a box.
pub fn equiv_m(s: &[i64], t: &[i64], m: i64, n: usize, radius: i64) -> Result<Connectivity, ConeError> {
    if !same_lattice(s, t, n) {
        return Err(ConeError::ResidueMismatch(s.to_vec(), t.to_vec()));
    }
    let x = phi(t, s, n);
    if x.iter().any(|v| !v.is_integer()) {
        return Err(ConeError::NotIntegral(x));
    }
    let xi: Vec<i64> = x.iter().map(|v| v.to_integer()).collect();
    let cone = dominance_cone(s, m, n);
    z_connected(&vec![0; xi.len()], &xi, &cone, radius)
}

/// Box-bounded audit of c ∈ 𝒜(b): sample pairs of integral points of C_b and test their
/// Z-connectivity inside C_c.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub pairs: usize,
    pub connected: usize,
    pub inconclusive: usize,
    pub failures: Vec<(Vec<i64>, Vec<i64>)>,
}

pub fn audit_constructive_c<R: rand::Rng>(b: &[Q], c: &[Q], pairs: usize, spread: i64, radius: i64, rng: &mut R) -> AuditReport {
    let cb = Cone::at_least(b.to_vec());
    let cc = Cone::at_least(c.to_vec());
    let base: Vec<i64> = cone_vertex(b).iter().map(|w| ceil(*w).to_integer()).collect();
    let sample = |rng: &mut R| -> Vec<i64> {
        loop {
            let p: Vec<i64> = base.iter().map(|v| v + rng.gen_range(0..=spread)).collect();
            if cb.contains_int(&p) {
                return p;
            }
        }
    };
    let mut rep = AuditReport { pairs, connected: 0, inconclusive: 0, failures: Vec::new() };
    for _ in 0..pairs {
        let (x, y) = (sample(rng), sample(rng));
        let r = z_connected(&x, &y, &cc, radius).expect("dimensions agree");
        if r.connected {
            rep.connected += 1;
        } else if r.box_too_small {
            rep.inconclusive += 1;
        } else {
            rep.failures.push((x, y));
        }
    }
    rep
}

/// (M, c, N, N′) for a vacuum r and a weight with residue content `content` over r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationConstants {
    pub m: i64,
    pub c: i64,
    /// N = M + c = n·N_0 + n(l² + l + 3).
    pub big_n: i64,
    /// N′ = Σ_i N_i; a conjectured threshold only.
    pub n_prime: i64,
    pub n_prime_conjectural: bool,
}

/// M = n(N_0 + 2); c = n + l²n + nl from the bound m_0 ≥ −l² on the minimal cone constant.
pub fn stabilization_constants(content: &[usize], n: usize, l: usize) -> StabilizationConstants {
    let (n, l) = (n as i64, l as i64);
    let n0 = content[0] as i64;
    let m = n * (n0 + 2);
    let c = n + l * l * n + n * l;
    StabilizationConstants { m, c, big_n: m + c, n_prime: content.iter().sum::<usize>() as i64, n_prime_conjectural: true }
}
