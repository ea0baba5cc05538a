//! Newton polyhedra.
//!
//! In two variables the polyhedron is a staircase: a vertical ray, a chain of
//! compact edges with decreasing steepness, and a horizontal ray. Every facet
//! carries its primitive inner normal `w` and the value `w · p` shared by its
//! points. In more variables only the diagonal distance is computed, by a
//! pair of exact linear programs.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat_int, Rational, SparsePoly, WeightVector};
use crate::simplex::{self, LinearProgram, LpSolution};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Point {
    pub x: u32,
    pub y: u32,
}

impl Point {
    pub fn new(x: u32, y: u32) -> Self {
        Point { x, y }
    }
}

/// An edge or ray of a planar Newton polyhedron.
///
/// `end` is `None` for the two unbounded facets: the vertical one starts at
/// the first vertex and runs upward, the horizontal one starts at the last
/// vertex and runs to the right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Facet {
    normal: WeightVector,
    start: Point,
    end: Option<Point>,
    constant: u128,
}

impl Facet {
    fn compact(p: Point, q: Point) -> Self {
        let dy = (p.y - q.y) as u64;
        let dx = (q.x - p.x) as u64;
        let normal = WeightVector::new(&[dy, dx]).expect("edge has nonzero extent");
        let constant = dot(&normal, p);
        Facet {
            normal,
            start: p,
            end: Some(q),
            constant,
        }
    }

    fn vertical(p: Point) -> Self {
        Facet {
            normal: WeightVector::new(&[1, 0]).unwrap(),
            start: p,
            end: None,
            constant: p.x as u128,
        }
    }

    fn horizontal(p: Point) -> Self {
        Facet {
            normal: WeightVector::new(&[0, 1]).unwrap(),
            start: p,
            end: None,
            constant: p.y as u128,
        }
    }

    pub fn normal(&self) -> &WeightVector {
        &self.normal
    }

    pub fn wx(&self) -> u64 {
        self.normal.as_slice()[0]
    }

    pub fn wy(&self) -> u64 {
        self.normal.as_slice()[1]
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn end(&self) -> Option<Point> {
        self.end
    }

    pub fn is_compact(&self) -> bool {
        self.end.is_some()
    }

    /// `w · p` for every point `p` on the facet.
    pub fn constant(&self) -> u128 {
        self.constant
    }

    /// Direction of the ray for unbounded facets.
    pub fn ray_direction(&self) -> Option<Point> {
        match self.end {
            Some(_) => None,
            None if self.wx() == 1 => Some(Point::new(0, 1)),
            None => Some(Point::new(1, 0)),
        }
    }

    /// The `t` at which the supporting line meets the diagonal, `(w·p)/Σw`.
    pub fn diagonal_value(&self) -> Rational {
        Rational::new(self.constant.into(), self.normal.sum().into())
    }

    /// Whether `(px, py)` lies on the facet (line and extent).
    pub fn contains(&self, px: &Rational, py: &Rational) -> bool {
        let on_line = px * rat_int(self.wx()) + py * rat_int(self.wy()) == rat_int(self.constant);
        if !on_line {
            return false;
        }
        let (sx, sy) = (rat_int(self.start.x), rat_int(self.start.y));
        match (self.end, self.ray_direction()) {
            (Some(q), _) => *px >= sx && *px <= rat_int(q.x),
            (None, Some(d)) if d.y == 1 => *py >= sy,
            _ => *px >= sx,
        }
    }
}

fn dot(w: &WeightVector, p: Point) -> u128 {
    w.as_slice()[0] as u128 * p.x as u128 + w.as_slice()[1] as u128 * p.y as u128
}

/// Vertices run from the top-left to the bottom-right, strictly increasing in
/// `x` and strictly decreasing in `y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonPolygon {
    vertices: Vec<Point>,
    facets: Vec<Facet>,
}

impl NewtonPolygon {
    /// Polyhedron generated by a nonempty set of lattice points.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("Newton polygon of an empty support"));
        }
        let mut pts = points.to_vec();
        pts.sort();
        // Keep the lowest point in each column.
        pts.dedup_by_key(|p| p.x);
        let mut hull: Vec<Point> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let o = hull[hull.len() - 2];
                let a = hull[hull.len() - 1];
                let cross = (a.x as i128 - o.x as i128) * (p.y as i128 - o.y as i128)
                    - (a.y as i128 - o.y as i128) * (p.x as i128 - o.x as i128);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let min_y = hull.iter().map(|p| p.y).min().unwrap();
        let cut = hull.iter().position(|p| p.y == min_y).unwrap();
        hull.truncate(cut + 1);

        let mut facets = Vec::with_capacity(hull.len() + 1);
        facets.push(Facet::vertical(hull[0]));
        for pair in hull.windows(2) {
            facets.push(Facet::compact(pair[0], pair[1]));
        }
        facets.push(Facet::horizontal(*hull.last().unwrap()));
        Ok(NewtonPolygon {
            vertices: hull,
            facets,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Vertical ray first, horizontal ray last.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn compact_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.is_compact())
    }

    /// Whether the polyhedron touches both coordinate axes.
    pub fn meets_both_axes(&self) -> bool {
        self.vertices.first().is_some_and(|p| p.x == 0)
            && self.vertices.last().is_some_and(|p| p.y == 0)
    }

    /// Membership of a lattice point in the polyhedron.
    pub fn contains_point(&self, p: Point) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, p) >= f.constant)
    }

    /// Where the diagonal leaves the polyhedron.
    ///
    /// `(t, t)` is inside exactly when `t ≥ constant/Σw` for every facet, so
    /// `c` is the largest of these ratios and the facets attaining it are the
    /// ones through `(c, c)`.
    pub fn diagonal(&self) -> DiagonalData {
        let c = self
            .facets
            .iter()
            .map(Facet::diagonal_value)
            .max()
            .expect("a polygon has facets");
        let facets: Vec<Facet> = self
            .facets
            .iter()
            .filter(|f| f.diagonal_value() == c)
            .cloned()
            .collect();
        let is_corner = facets.len() == 2;
        DiagonalData {
            c,
            facets,
            is_corner,
        }
    }

    /// Mirror image under `x ↔ y`.
    pub fn reflect(&self) -> NewtonPolygon {
        let pts: Vec<Point> = self.vertices.iter().map(|p| Point::new(p.y, p.x)).collect();
        NewtonPolygon::from_points(&pts).expect("nonempty")
    }
}

/// The point `(c, c)` where the diagonal meets the boundary.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalData {
    pub c: Rational,
    /// One facet, or the two that meet at a vertex on the diagonal.
    pub facets: Vec<Facet>,
    pub is_corner: bool,
}

impl DiagonalData {
    pub fn facet(&self) -> &Facet {
        &self.facets[0]
    }
}

/// Newton polygon of a nonzero bivariate polynomial.
pub fn newton_polygon(f: &SparsePoly) -> Result<NewtonPolygon> {
    if f.nvars() != 2 {
        return Err(Error::structural(format!(
            "Newton polygons need two variables, got {}",
            f.nvars()
        )));
    }
    if f.is_zero() {
        return Err(Error::domain("Newton polygon of the zero polynomial"));
    }
    let pts: Vec<Point> = f.support().map(|e| Point::new(e[0], e[1])).collect();
    NewtonPolygon::from_points(&pts)
}

pub fn diagonal_data(polygon: &NewtonPolygon) -> DiagonalData {
    polygon.diagonal()
}

/// Support points not dominated componentwise by another support point;
/// they generate the same polyhedron.
fn minimal_support(f: &SparsePoly) -> Vec<Vec<u32>> {
    let pts: Vec<Vec<u32>> = f.support().map(|e| e.to_vec()).collect();
    pts.iter()
        .filter(|p| {
            !pts.iter()
                .any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect()
}

/// Diagonal distance `c` in any number of variables.
///
/// Solves `min t` over `(t, …, t) ∈ conv(support) + R≥0ⁿ` and its dual
/// `max z` over `z ≤ w · e` for all support points `e`, `Σw = 1`, `w ≥ 0`,
/// then checks that both optima agree and that the optimal dual weights
/// reproduce the value as `wt_w(f)/Σw`.
pub fn distance_nd(f: &SparsePoly) -> Result<Rational> {
    if f.is_zero() {
        return Err(Error::domain("distance of the zero polynomial"));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::domain(
            "f(0) ≠ 0: the origin is not on the hypersurface",
        ));
    }
    let n = f.nvars();
    let pts = minimal_support(f);

    let primal = primal_lp(&pts, n);
    let dual = dual_lp(&pts, n);
    let (
        LpSolution::Optimal { value: c, .. },
        LpSolution::Optimal {
            value: neg_z,
            x: dual_x,
        },
    ) = (simplex::solve(&primal), simplex::solve(&dual))
    else {
        return Err(Error::Inconclusive(
            "distance linear program did not reach an optimum".into(),
        ));
    };
    let z = -neg_z;
    if c != z {
        return Err(Error::Inconclusive(format!(
            "primal distance {c} disagrees with dual value {z}"
        )));
    }
    let w = WeightVector::from_rationals(&dual_x[..n])?;
    let wt = f.weight(&w).expect("nonzero");
    let ratio = Rational::new(wt.into(), w.sum().into());
    if ratio != c {
        return Err(Error::Inconclusive(format!(
            "dual weights {w} give {ratio}, not {c}"
        )));
    }
    Ok(c)
}

/// Columns: λ_1..λ_k, t, s_1..s_n.
fn primal_lp(pts: &[Vec<u32>], n: usize) -> LinearProgram {
    let k = pts.len();
    let width = k + 1 + n;
    let mut constraints = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row = vec![Rational::zero(); width];
        for (j, p) in pts.iter().enumerate() {
            row[j] = rat_int(p[i]);
        }
        row[k] = -Rational::one();
        row[k + 1 + i] = Rational::one();
        constraints.push(row);
    }
    let mut convex = vec![Rational::zero(); width];
    for v in convex.iter_mut().take(k) {
        *v = Rational::one();
    }
    constraints.push(convex);
    let mut rhs = vec![Rational::zero(); n];
    rhs.push(Rational::one());
    let mut objective = vec![Rational::zero(); width];
    objective[k] = Rational::one();
    LinearProgram {
        constraints,
        rhs,
        objective,
    }
}

/// Columns: w_1..w_n, z, u_1..u_k; minimizes −z.
fn dual_lp(pts: &[Vec<u32>], n: usize) -> LinearProgram {
    let k = pts.len();
    let width = n + 1 + k;
    let mut constraints = Vec::with_capacity(k + 1);
    for (j, p) in pts.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        for i in 0..n {
            row[i] = -rat_int(p[i]);
        }
        row[n] = Rational::one();
        row[n + 1 + j] = Rational::one();
        constraints.push(row);
    }
    let mut simplex_row = vec![Rational::zero(); width];
    for v in simplex_row.iter_mut().take(n) {
        *v = Rational::one();
    }
    constraints.push(simplex_row);
    let mut rhs = vec![Rational::zero(); k];
    rhs.push(Rational::one());
    let mut objective = vec![Rational::zero(); width];
    objective[n] = -Rational::one();
    LinearProgram {
        constraints,
        rhs,
        objective,
    }
}
