//! Generation of {p,3} hyperbolic tessellation graphs, ring by ring, with
//! their Poincaré-disk embedding.
//!
//! The construction starts from the fundamental p-gon centered at the origin
//! (vertices at radius r₀, angles 2πk/p) and grows the face complex corona by
//! corona: every face adjacent to the current boundary is the image of an
//! existing face under a rotation by ±2π/3 about one of its vertices. Ring ℓ
//! of the *graph* is the set of vertices first appearing in face corona ℓ−1.
//! Sites are enumerated ring-major, counterclockwise within each ring.
//!
//! All neighboring sites sit at the same hyperbolic distance d₀, fixed by the
//! tessellation; h = tanh d₀ is the lattice parameter controlling the
//! continuum approximation.

use num_complex::Complex64;
use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;
use std::io::{self, Write};
use thiserror::Error;

use crate::geometry::{hyp_distance, DiskPoint};

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("{{{p},{q}}} is not hyperbolic: requires (p-2)(q-2) > 4")]
    NotHyperbolic { p: u32, q: u32 },
    #[error("ring count {0} outside the supported range 1..=10")]
    RingsOutOfRange(u32),
    #[error("ring index {0} must be >= 1")]
    InvalidRingIndex(u32),
    #[error("site index {0} out of range")]
    SiteOutOfRange(usize),
    #[error("site {0} has coordination 2: neighbor frame undefined without the outer virtual neighbor")]
    BoundaryFrame(usize),
    #[error("neighbor images of site {site} do not form an equilateral triangle (spread {spread:.3e})")]
    FrameInconsistent { site: usize, spread: f64 },
    #[error("site count overflow at ring {0}")]
    CountOverflow(u32),
}

/// Circumradius r₀ of the fundamental polygon of the {p,q} tessellation:
/// r₀ = √(cos(π/q + π/p) / cos(π/p − π/q)).
pub fn fundamental_radius(p: u32, q: u32) -> Result<f64, LatticeError> {
    if (p as i64 - 2) * (q as i64 - 2) <= 4 {
        return Err(LatticeError::NotHyperbolic { p, q });
    }
    let (pf, qf) = (p as f64, q as f64);
    let num = (PI / qf + PI / pf).cos();
    let den = (PI / pf - PI / qf).cos();
    Ok((num / den).sqrt())
}

/// Edge length d₀ = d(r₀, r₀ e^{2πi/p}) and lattice parameter h = tanh d₀
/// of the {p,3} tessellation.
pub fn lattice_spacing(p: u32) -> Result<(f64, f64), LatticeError> {
    let r0 = fundamental_radius(p, 3)?;
    let z1 = DiskPoint::from_polar(r0, 0.0).expect("r0 < 1");
    let z2 = DiskPoint::from_polar(r0, 2.0 * PI / p as f64).expect("r0 < 1");
    let d0 = hyp_distance(z1, z2);
    Ok((d0, d0.tanh()))
}

/// Lattice parameter of the heptagonal tessellation, h = tanh d₀ = 0.275798…
pub fn heptagonal_h() -> f64 {
    lattice_spacing(7).expect("{7,3} is hyperbolic").1
}

/// x_ℓ = ((3+√5)/2)^ℓ + ((3−√5)/2)^ℓ via the integer recurrence
/// x_ℓ = 3x_{ℓ−1} − x_{ℓ−2}, x₀ = 2, x₁ = 3.
fn golden_trace(rings: u32) -> Result<u64, LatticeError> {
    let (mut prev, mut cur) = (2u64, 3u64);
    for _ in 1..rings {
        let next = 3u64
            .checked_mul(cur)
            .and_then(|v| v.checked_sub(prev))
            .ok_or(LatticeError::CountOverflow(rings))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Total number of sites of the heptagonal graph with ℓ rings:
/// N(ℓ) = 7[((3+√5)/2)^ℓ + ((3−√5)/2)^ℓ − 2], an integer for every ℓ.
pub fn total_sites(rings: u32) -> Result<u64, LatticeError> {
    if rings == 0 {
        return Err(LatticeError::InvalidRingIndex(rings));
    }
    Ok(7 * (golden_trace(rings)? - 2))
}

/// Number of sites on the ℓ-th ring of the heptagonal graph.
pub fn ring_site_count(ring: u32) -> Result<u64, LatticeError> {
    if ring == 0 {
        return Err(LatticeError::InvalidRingIndex(ring));
    }
    if ring == 1 {
        return Ok(7);
    }
    Ok(total_sites(ring)? - total_sites(ring - 1)?)
}

/// Effective continuum disk radius for a graph with `n` sites:
/// L = √(N/(N + 4p/(p−6))); the constant is 28 for the heptagonal lattice.
pub fn effective_radius_for(n: u64, p: u32) -> f64 {
    let c = 4.0 * p as f64 / (p as f64 - 6.0);
    ((n as f64) / (n as f64 + c)).sqrt()
}

/// Heptagonal effective radius L = √(N/(N+28)).
pub fn effective_radius(n: u64) -> f64 {
    effective_radius_for(n, 7)
}

// ───────────────────────────────────────────────────────────────────
//  Möbius matrices and the spatial dedup index
// ───────────────────────────────────────────────────────────────────

/// Disk automorphism as a projective 2×2 matrix z ↦ (az+b)/(cz+d).
#[derive(Debug, Clone, Copy)]
struct Mobius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Mobius {
    fn identity() -> Self {
        Mobius {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// self ∘ other (matrix product), renormalized to keep entries O(1).
    fn compose(&self, other: &Mobius) -> Mobius {
        let mut m = Mobius {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        };
        let scale = m
            .a
            .norm()
            .max(m.b.norm())
            .max(m.c.norm())
            .max(m.d.norm());
        if scale > 0.0 {
            let inv = 1.0 / scale;
            m.a *= inv;
            m.b *= inv;
            m.c *= inv;
            m.d *= inv;
        }
        m
    }

    /// Rotation by `theta` about the disk point `w`.
    fn rotation_about(w: Complex64, theta: f64) -> Mobius {
        let e = Complex64::from_polar(1.0, theta / 2.0);
        let ec = e.conj();
        let n = w.norm_sqr();
        Mobius {
            a: e - n * ec,
            b: w * (ec - e),
            c: w.conj() * (e - ec),
            d: ec - n * e,
        }
    }
}

/// Hash grid over (artanh r, φ) used to deduplicate points to a hyperbolic
/// tolerance. Both coordinates change by at most the hyperbolic distance
/// (the angle by even less away from the origin), so matches always land in
/// the 3×3 cell neighborhood.
struct DiskHash {
    cell: f64,
    n_phi: i64,
    map: HashMap<(i64, i64), Vec<u32>>,
}

impl DiskHash {
    fn new() -> Self {
        let cell = 1e-5;
        DiskHash {
            cell,
            n_phi: (2.0 * PI / cell).ceil() as i64,
            map: HashMap::new(),
        }
    }

    fn key(&self, z: Complex64) -> (i64, i64) {
        let s = z.norm().atanh();
        let mut phi = z.arg();
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        let ir = (s / self.cell).floor() as i64;
        let ip = ((phi / self.cell).floor() as i64).rem_euclid(self.n_phi);
        (ir, ip)
    }

    fn insert(&mut self, idx: u32, z: Complex64) {
        let k = self.key(z);
        self.map.entry(k).or_default().push(idx);
    }

    fn find_within(&self, z: Complex64, tol: f64, points: &[Complex64]) -> Option<u32> {
        let (ir, ip) = self.key(z);
        let zp = DiskPoint::new(z).ok()?;
        for dr in -1..=1 {
            for dp in -1..=1 {
                let k = (ir + dr, (ip + dp).rem_euclid(self.n_phi));
                if let Some(ids) = self.map.get(&k) {
                    for &id in ids {
                        let other = DiskPoint::new(points[id as usize]).ok()?;
                        if hyp_distance(zp, other) < tol {
                            return Some(id);
                        }
                    }
                }
            }
        }
        None
    }
}

// ───────────────────────────────────────────────────────────────────
//  The lattice itself
// ───────────────────────────────────────────────────────────────────

/// Local frame of a coordination-3 site: the centering automorphism at z_i
/// maps its neighbors to {h e^{iχ}, h e^{i(χ+2π/3)}, h e^{i(χ+4π/3)}}.
/// χ is canonicalized to [0, 2π/3); δ = χ − φ_i (same canonicalization)
/// is the rotation-invariant combination entering the cubic correction.
#[derive(Debug, Clone, Copy)]
pub struct NeighborFrame {
    pub site: usize,
    pub chi: f64,
    pub delta: f64,
}

/// A finite {p,3} tessellation graph embedded in the Poincaré disk.
pub struct HyperbolicLattice {
    p: u32,
    rings: u32,
    sites: Vec<DiskPoint>,
    ring_of: Vec<u32>,
    neighbors: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    r0: f64,
    d0: f64,
    h: f64,
    l: f64,
}

/// Hyperbolic dedup tolerance: far above the ~1e-13 accumulation error of
/// the Möbius compositions, far below the site separation d₀ ≈ 0.28.
const DEDUP_TOL: f64 = 1e-8;

/// Generate the {p,3} lattice with the given number of rings (p ≥ 7,
/// 1 ≤ rings ≤ 10).
pub fn generate_lattice(p: u32, rings: u32) -> Result<HyperbolicLattice, LatticeError> {
    if !(1..=10).contains(&rings) {
        return Err(LatticeError::RingsOutOfRange(rings));
    }
    let r0 = fundamental_radius(p, 3)?;
    let (d0, h) = lattice_spacing(p)?;
    let base: Vec<Complex64> = (0..p)
        .map(|k| Complex64::from_polar(r0, 2.0 * PI * k as f64 / p as f64))
        .collect();

    // Face BFS, corona by corona: corona c+1 faces are the vertex-rotation
    // images of corona c faces not seen before.
    let mut faces: Vec<Mobius> = vec![Mobius::identity()];
    let mut face_centers: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
    let mut coronas: Vec<u32> = vec![0];
    let mut face_hash = DiskHash::new();
    face_hash.insert(0, face_centers[0]);
    let mut current: Vec<usize> = vec![0];
    for corona in 1..rings {
        let mut next = Vec::new();
        for &fi in &current {
            let face = faces[fi];
            for k in 0..p as usize {
                let w = face.apply(base[k]);
                for theta in [2.0 * PI / 3.0, -2.0 * PI / 3.0] {
                    let image = Mobius::rotation_about(w, theta).compose(&face);
                    let center = image.apply(Complex64::new(0.0, 0.0));
                    if face_hash
                        .find_within(center, DEDUP_TOL, &face_centers)
                        .is_none()
                    {
                        let id = faces.len() as u32;
                        faces.push(image);
                        face_centers.push(center);
                        coronas.push(corona);
                        face_hash.insert(id, center);
                        next.push(id as usize);
                    }
                }
            }
        }
        current = next;
    }

    // Vertices: the first appearance fixes the ring index (corona + 1).
    let mut verts: Vec<Complex64> = Vec::new();
    let mut ring_of_unsorted: Vec<u32> = Vec::new();
    let mut vert_hash = DiskHash::new();
    let mut face_vertices: Vec<Vec<u32>> = Vec::with_capacity(faces.len());
    for (fi, face) in faces.iter().enumerate() {
        let mut ids = Vec::with_capacity(p as usize);
        for k in 0..p as usize {
            let z = face.apply(base[k]);
            let id = match vert_hash.find_within(z, DEDUP_TOL, &verts) {
                Some(id) => id,
                None => {
                    let id = verts.len() as u32;
                    verts.push(z);
                    ring_of_unsorted.push(coronas[fi] + 1);
                    vert_hash.insert(id, z);
                    id
                }
            };
            ids.push(id);
        }
        face_vertices.push(ids);
    }

    // Edges: consecutive vertices of a face; each tessellation edge borders
    // two faces and is recorded once through the set.
    let mut edge_set: BTreeSet<(u32, u32)> = BTreeSet::new();
    for ids in &face_vertices {
        for k in 0..ids.len() {
            let (i, j) = (ids[k], ids[(k + 1) % ids.len()]);
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            edge_set.insert((lo, hi));
        }
    }

    // Ring-major counterclockwise ordering, starting from the smallest
    // nonnegative angle within each ring.
    let n = verts.len();
    let mut order: Vec<usize> = (0..n).collect();
    let sort_angle = |z: Complex64| -> f64 {
        let mut a = z.arg();
        if a < 0.0 {
            a += 2.0 * PI;
        }
        if a > 2.0 * PI - 1e-9 {
            a -= 2.0 * PI;
        }
        a
    };
    order.sort_by(|&i, &j| {
        let key_i = (ring_of_unsorted[i], sort_angle(verts[i]), verts[i].norm());
        let key_j = (ring_of_unsorted[j], sort_angle(verts[j]), verts[j].norm());
        key_i.partial_cmp(&key_j).expect("angles are finite")
    });
    let mut rank = vec![0u32; n];
    for (new_idx, &old_idx) in order.iter().enumerate() {
        rank[old_idx] = new_idx as u32;
    }

    let sites: Vec<DiskPoint> = order
        .iter()
        .map(|&i| DiskPoint::new(verts[i]).expect("vertices lie inside the disk"))
        .collect();
    let ring_of: Vec<u32> = order.iter().map(|&i| ring_of_unsorted[i]).collect();
    let mut edges: Vec<(u32, u32)> = edge_set
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (rank[i as usize], rank[j as usize]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort_unstable();
    let mut neighbors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(i, j) in &edges {
        neighbors[i as usize].push(j);
        neighbors[j as usize].push(i);
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }

    let lattice = HyperbolicLattice {
        p,
        rings,
        sites,
        ring_of,
        neighbors,
        edges,
        r0,
        d0,
        h,
        l: effective_radius_for(n as u64, p),
    };
    debug_assert!(lattice.max_edge_length_deviation() < 1e-9);
    Ok(lattice)
}

impl HyperbolicLattice {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rings(&self) -> u32 {
        self.rings
    }

    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    pub fn site(&self, i: usize) -> DiskPoint {
        self.sites[i]
    }

    pub fn sites(&self) -> &[DiskPoint] {
        &self.sites
    }

    /// 1-based ring index of a site.
    pub fn ring_of(&self, i: usize) -> u32 {
        self.ring_of[i]
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[i]
    }

    /// Undirected edge list, each edge once with i < j, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn coordination(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// Sites with coordination 3 (every site not on the open boundary edge).
    pub fn interior_sites(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.site_count()).filter(|&i| self.coordination(i) == 3)
    }

    pub fn fundamental_radius(&self) -> f64 {
        self.r0
    }

    pub fn edge_length(&self) -> f64 {
        self.d0
    }

    pub fn lattice_parameter(&self) -> f64 {
        self.h
    }

    /// Effective continuum disk radius L = √(N/(N + 4p/(p−6))).
    pub fn effective_radius(&self) -> f64 {
        self.l
    }

    pub fn mean_coordination(&self) -> f64 {
        2.0 * self.edges.len() as f64 / self.site_count() as f64
    }

    pub fn max_edge_length_deviation(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(i, j)| {
                (hyp_distance(self.sites[i as usize], self.sites[j as usize]) - self.d0).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Local frame (χ_i, δ_i) of a coordination-3 site.
    pub fn neighbor_frame(&self, i: usize) -> Result<NeighborFrame, LatticeError> {
        if i >= self.site_count() {
            return Err(LatticeError::SiteOutOfRange(i));
        }
        if self.coordination(i) != 3 {
            return Err(LatticeError::BoundaryFrame(i));
        }
        let zi = self.sites[i].z();
        let sector = 2.0 * PI / 3.0;
        let mut chis = [0.0f64; 3];
        for (a, &j) in self.neighbors[i].iter().enumerate() {
            let zj = self.sites[j as usize].z();
            let w = (zi - zj) / (Complex64::new(1.0, 0.0) - zj * zi.conj());
            debug_assert!((w.norm() - self.h).abs() < 1e-9);
            let mut chi = w.arg().rem_euclid(sector);
            if a > 0 {
                // bring onto the same representative as the first neighbor
                while chi - chis[0] > sector / 2.0 {
                    chi -= sector;
                }
                while chi - chis[0] < -sector / 2.0 {
                    chi += sector;
                }
            }
            chis[a] = chi;
        }
        let spread = chis
            .iter()
            .map(|c| (c - chis[0]).abs())
            .fold(0.0, f64::max);
        if spread > 1e-9 {
            return Err(LatticeError::FrameInconsistent { site: i, spread });
        }
        let chi = ((chis[0] + chis[1] + chis[2]) / 3.0).rem_euclid(sector);
        let delta = (chi - self.sites[i].angle()).rem_euclid(sector);
        Ok(NeighborFrame { site: i, chi, delta })
    }

    /// Plain-text coordinate export: one site per line, `Re(z) Im(z)` with
    /// 17 significant digits.
    pub fn write_coordinates<W: Write>(&self, mut w: W) -> io::Result<()> {
        for s in &self.sites {
            writeln!(w, "{:.16e} {:.16e}", s.z().re, s.z().im)?;
        }
        Ok(())
    }

    /// Edge-list export: CSV with header `i,j`, 0-based, each undirected
    /// edge once with i < j.
    pub fn write_edges_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "i,j")?;
        for &(i, j) in &self.edges {
            writeln!(w, "{i},{j}")?;
        }
        Ok(())
    }
}
