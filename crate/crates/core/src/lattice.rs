//! Disjunction closures of predicate families over a finite domain: the
//! representative elements of `F_or`, their Hasse diagram under logical
//! implication, witness and teaching-dimension machinery, the polynomial
//! specifying-set construction that makes the halving learner run in
//! polynomial time, and the axis-parallel ray generators.
//!
//! Truth tables are bit vectors over the enumerated domain, so implication
//! is a bitwise subset test and the join of a subset is a bitwise OR.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::instance::InstanceSet;
use crate::measures;
use crate::solvers::{self, AnswerOracle, QueryTranscript};

/// An enumerated finite domain; grids `[n]^m` are enumerated row-major with
/// the last coordinate varying fastest.
#[derive(Clone, Debug)]
pub struct Domain {
    pub grid: Option<(usize, usize)>,
    pub size: usize,
}

impl Domain {
    pub fn grid(n: usize, m: usize, max_points: usize) -> Result<Self> {
        if n < 2 || m < 1 {
            return Err(Error::Format(format!(
                "grid needs n >= 2 and m >= 1, got n={n} m={m}"
            )));
        }
        let mut size = 1usize;
        for _ in 0..m {
            size =
                size.checked_mul(n)
                    .filter(|&s| s <= max_points)
                    .ok_or(Error::DomainTooLarge {
                        points: usize::MAX,
                        limit: max_points,
                    })?;
        }
        if size > max_points {
            return Err(Error::DomainTooLarge {
                points: size,
                limit: max_points,
            });
        }
        Ok(Domain {
            grid: Some((n, m)),
            size,
        })
    }

    pub fn points(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Format("domain must have at least one point".into()));
        }
        Ok(Domain { grid: None, size })
    }

    /// 1-based coordinates of a grid point.
    pub fn coords(&self, point: usize) -> Vec<usize> {
        let (n, m) = self.grid.expect("coords need a grid domain");
        let mut out = vec![0; m];
        let mut rest = point;
        for j in (0..m).rev() {
            out[j] = 1 + rest % n;
            rest /= n;
        }
        out
    }

    pub fn point_label(&self, point: usize) -> String {
        match self.grid {
            Some(_) => {
                let coords: Vec<String> =
                    self.coords(point).iter().map(|c| c.to_string()).collect();
                format!("({})", coords.join(","))
            }
            None => format!("p{}", point + 1),
        }
    }
}

/// A named boolean predicate over the domain, stored as its truth table.
#[derive(Clone, Debug)]
pub struct Predicate {
    pub name: String,
    pub table: BitVector,
}

/// The single-coordinate threshold predicate `[x_j >= i]` (0-based `coord`,
/// 1-based threshold), named after its two parameters.
pub fn ray_predicate(domain: &Domain, coord: usize, threshold: usize) -> Predicate {
    let table = BitVector::from_fn(domain.size, |p| domain.coords(p)[coord] >= threshold);
    Predicate {
        name: format!("f{}{}", coord + 1, threshold),
        table,
    }
}

fn ray_sum_predicate(domain: &Domain, threshold: usize, name: String) -> Predicate {
    let table = BitVector::from_fn(domain.size, |p| {
        domain.coords(p).iter().sum::<usize>() >= threshold
    });
    Predicate { name, table }
}

/// The `Ray_n^m` generators: all `n * m` single-coordinate rays over `[n]^m`.
pub fn gen_ray(n: usize, m: usize, max_points: usize) -> Result<(Domain, Vec<Predicate>)> {
    let domain = Domain::grid(n, m, max_points)?;
    let mut preds = Vec::with_capacity(n * m);
    for coord in 0..m {
        for threshold in 1..=n {
            preds.push(ray_predicate(&domain, coord, threshold));
        }
    }
    Ok((domain, preds))
}

/// The eleven-predicate family over `{1,2,3}^2`: per-coordinate rays
/// `f_i = [x1 >= i]`, `g_i = [x2 >= i]`, and the diagonal cuts
/// `h_i = [x1 + x2 >= i + 1]` for `i = 1..5`.
pub fn gen_ray_sum() -> (Domain, Vec<Predicate>) {
    let domain = Domain::grid(3, 2, 16).expect("9 points");
    let mut preds = Vec::with_capacity(11);
    for i in 1..=3usize {
        let table = BitVector::from_fn(domain.size, |p| domain.coords(p)[0] >= i);
        preds.push(Predicate {
            name: format!("f{i}"),
            table,
        });
    }
    for i in 1..=3usize {
        let table = BitVector::from_fn(domain.size, |p| domain.coords(p)[1] >= i);
        preds.push(Predicate {
            name: format!("g{i}"),
            table,
        });
    }
    for i in 1..=5usize {
        preds.push(ray_sum_predicate(&domain, i + 1, format!("h{i}")));
    }
    (domain, preds)
}

/// All distinct subset-joins of the given tables, always including the zero
/// function (the empty join). Computed as a pairwise-join fixpoint, which
/// reaches every subset join while scaling with the closure size instead of
/// `2^|F|`. Sorted by (popcount, table bits), so index order refines the
/// implication order.
pub fn closure(width: usize, tables: &[BitVector]) -> Vec<BitVector> {
    let mut list = vec![BitVector::zeros(width)];
    let mut seen: HashSet<BitVector> = list.iter().cloned().collect();
    for t in tables {
        assert_eq!(t.width(), width, "predicate tables share one domain");
        if seen.insert(t.clone()) {
            list.push(t.clone());
        }
    }
    loop {
        let mut added = false;
        let len = list.len();
        for i in 0..len {
            for j in i + 1..len {
                let join = list[i].or(&list[j]);
                if seen.insert(join.clone()) {
                    list.push(join);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    list.sort_by(|a, b| (a.count_ones(), a.words()).cmp(&(b.count_ones(), b.words())));
    list
}

/// A representative element: its function table and the maximal generator
/// set (every predicate implying the function; their join gives it back).
#[derive(Clone, Debug)]
pub struct LatticeElement {
    pub table: BitVector,
    pub generators: Vec<usize>,
}

/// The Hasse diagram of the disjunction closure under implication.
/// `children[g]` are the immediate descendants `De(G)`, `parents[g]` the
/// immediate ascendants `As(G)`; both are the transitive reduction of the
/// bitwise-subset order on tables.
pub struct HasseDiagram {
    pub domain: Domain,
    pub predicates: Vec<Predicate>,
    pub elements: Vec<LatticeElement>,
    pub children: Vec<Vec<usize>>,
    pub parents: Vec<Vec<usize>>,
    pub top: usize,
    pub bottom: usize,
    index_by_table: HashMap<BitVector, usize>,
}

pub fn hasse_build(domain: Domain, predicates: Vec<Predicate>) -> Result<HasseDiagram> {
    for p in &predicates {
        if p.table.width() != domain.size {
            return Err(Error::WidthMismatch {
                left: domain.size,
                right: p.table.width(),
            });
        }
    }
    let tables: Vec<BitVector> = predicates.iter().map(|p| p.table.clone()).collect();
    let closed = closure(domain.size, &tables);
    let k = closed.len();

    let elements: Vec<LatticeElement> = closed
        .iter()
        .map(|t| {
            let generators: Vec<usize> = (0..predicates.len())
                .filter(|&i| predicates[i].table.implies(t))
                .collect();
            let join = generators
                .iter()
                .fold(BitVector::zeros(domain.size), |acc, &i| {
                    acc.or(&predicates[i].table)
                });
            assert_eq!(
                &join, t,
                "the maximal generator set joins back to the element"
            );
            LatticeElement {
                table: t.clone(),
                generators,
            }
        })
        .collect();

    // Strict implication as bit rows over element indices.
    let implies: Vec<BitVector> = (0..k)
        .map(|i| {
            BitVector::from_fn(k, |j| {
                i != j && elements[i].table.implies(&elements[j].table)
            })
        })
        .collect();

    let mut children = vec![Vec::new(); k];
    let mut parents = vec![Vec::new(); k];
    for i in 0..k {
        for j in implies[i].iter_ones() {
            let has_middle = implies[i].iter_ones().any(|x| implies[x].get(j));
            if !has_middle {
                children[j].push(i);
                parents[i].push(j);
            }
        }
    }

    let index_by_table: HashMap<BitVector, usize> = closed
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let top_table = tables
        .iter()
        .fold(BitVector::zeros(domain.size), |acc, t| acc.or(t));
    let diagram = HasseDiagram {
        top: index_by_table[&top_table],
        bottom: index_by_table[&BitVector::zeros(domain.size)],
        domain,
        predicates,
        elements,
        children,
        parents,
        index_by_table,
    };
    debug_assert!(diagram.validate_lemma_lca());
    Ok(diagram)
}

impl HasseDiagram {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the closure always contains the zero function
    }

    pub fn table(&self, g: usize) -> &BitVector {
        &self.elements[g].table
    }

    pub fn index_of(&self, table: &BitVector) -> Option<usize> {
        self.index_by_table.get(table).copied()
    }

    /// `deg(G) = |De(G)| + |As(G)|`.
    pub fn deg(&self, g: usize) -> usize {
        self.children[g].len() + self.parents[g].len()
    }

    /// `deg(F_or)`: the largest element degree.
    pub fn degree(&self) -> usize {
        (0..self.len()).map(|g| self.deg(g)).max().unwrap()
    }

    pub fn implies(&self, g1: usize, g2: usize) -> bool {
        self.table(g1).implies(self.table(g2))
    }

    /// Lowest common ascendant, which for joins-of-predicates is simply the
    /// element whose table is the bitwise OR (present by join closure).
    pub fn lca(&self, g1: usize, g2: usize) -> usize {
        let join = self.table(g1).or(self.table(g2));
        self.index_by_table[&join]
    }

    /// Greatest common descendant, taken order-theoretically over
    /// descendants-or-self; the implication order gives no join-style
    /// formula for it, and it may fail to be unique.
    pub fn gcd(&self, g1: usize, g2: usize) -> Result<usize> {
        let common: Vec<usize> = (0..self.len())
            .filter(|&x| self.implies(x, g1) && self.implies(x, g2))
            .collect();
        let maximal: Vec<usize> = common
            .iter()
            .copied()
            .filter(|&x| !common.iter().any(|&y| y != x && self.implies(x, y)))
            .collect();
        match maximal[..] {
            [only] => Ok(only),
            _ => Err(Error::MultipleMaximal {
                count: maximal.len(),
            }),
        }
    }

    /// Minimum witness set for `G`: fewest domain points distinguishing `G`
    /// from every other element. Exact set-cover search; its size is the
    /// teaching dimension `TD(class, G)`.
    pub fn witness_set_min(&self, g: usize) -> Vec<usize> {
        let others: Vec<BitVector> = (0..self.len())
            .filter(|&x| x != g)
            .map(|x| self.table(x).xor(self.table(g)))
            .collect();
        if others.is_empty() {
            return Vec::new();
        }
        let matrix = InstanceSet::new(self.domain.size, others)
            .expect("distinct elements give distinct, nonzero difference rows");
        measures::hitting_set_min(&matrix)
    }

    /// `TD(class) = max_G TD(class, G)`.
    pub fn teaching_dim(&self) -> usize {
        (0..self.len())
            .map(|g| self.witness_set_min(g).len())
            .max()
            .unwrap()
    }

    /// The two summands of the per-element teaching bound: `|De(G)|` and the
    /// exact `HS(As(G) ∧ ¬G)`. Their max over all elements equals the ETD of
    /// the class.
    pub fn etd_components(&self, g: usize) -> (usize, usize) {
        let de = self.children[g].len();
        let hs = match self.ascendant_difference_matrix(g) {
            Some(matrix) => measures::hitting_set_min(&matrix).len(),
            None => 0,
        };
        (de, hs)
    }

    fn ascendant_difference_matrix(&self, g: usize) -> Option<InstanceSet> {
        if self.parents[g].is_empty() {
            return None;
        }
        let rows: Vec<BitVector> = self.parents[g]
            .iter()
            .map(|&p| self.table(p).and_not(self.table(g)))
            .collect();
        Some(
            InstanceSet::new(self.domain.size, rows)
                .expect("G' = G ∨ (G' ∧ ¬G) makes ascendant differences distinct"),
        )
    }

    /// Constructive polynomial-time specifying set for an arbitrary
    /// hypothesis over the domain. If the hypothesis escapes the top
    /// element, one escaping point suffices. Otherwise descend to an element
    /// the hypothesis implies but none of whose immediate descendants it
    /// implies; emit one witness point per immediate descendant plus a
    /// hitting set of the ascendant differences. At most `deg(G)` points.
    pub fn specifying_set_poly(&self, hypothesis: &BitVector, exact_hs: bool) -> Vec<usize> {
        assert_eq!(hypothesis.width(), self.domain.size);
        if !hypothesis.implies(self.table(self.top)) {
            let escape = hypothesis
                .and_not(self.table(self.top))
                .first_one()
                .expect("non-implication leaves a positive point");
            return vec![escape];
        }
        let mut g = self.top;
        while let Some(c) = self.children[g]
            .iter()
            .copied()
            .find(|&c| hypothesis.implies(self.table(c)))
        {
            g = c;
        }
        let mut points = BTreeSet::new();
        for &c in &self.children[g] {
            let witness = hypothesis
                .and_not(self.table(c))
                .first_one()
                .expect("the descent stopped, so this child is not implied");
            points.insert(witness);
        }
        if let Some(matrix) = self.ascendant_difference_matrix(g) {
            let hs = if exact_hs {
                measures::hitting_set_min(&matrix)
            } else {
                measures::hitting_set_greedy(&matrix)
            };
            points.extend(hs);
        }
        points.into_iter().collect()
    }

    /// The class as a plain instance set: one row per element table, one
    /// column per domain point. Bridges the lattice to the generic measure
    /// and solver machinery.
    pub fn induced_matrix(&self) -> InstanceSet {
        let rows: Vec<BitVector> = self.elements.iter().map(|e| e.table.clone()).collect();
        InstanceSet::new(self.domain.size, rows).expect("closure tables are distinct")
    }

    /// Generator names joined with a disjunction sign; the zero function
    /// shows as `0`.
    pub fn element_label(&self, g: usize) -> String {
        let e = &self.elements[g];
        if e.generators.is_empty() {
            return "0".into();
        }
        e.generators
            .iter()
            .map(|&i| self.predicates[i].name.as_str())
            .collect::<Vec<_>>()
            .join("\u{2228}")
    }

    /// DOT rendering, edges pointing downward to immediate descendants.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n");
        for g in 0..self.len() {
            let _ = writeln!(out, "  g{g} [label=\"{}\"];", self.element_label(g));
        }
        for g in 0..self.len() {
            for &c in &self.children[g] {
                let _ = writeln!(out, "  g{g} -> g{c};");
            }
        }
        out.push_str("}\n");
        out
    }

    /// Joins of distinct immediate descendants give back their parent, and
    /// every pairwise OR is present as the lca.
    pub fn validate_lemma_lca(&self) -> bool {
        for g in 0..self.len() {
            for (i, &c1) in self.children[g].iter().enumerate() {
                for &c2 in &self.children[g][i + 1..] {
                    if &self.table(c1).or(self.table(c2)) != self.table(g) {
                        return false;
                    }
                }
            }
            for g2 in 0..self.len() {
                let join = self.table(g).or(self.table(g2));
                match self.index_by_table.get(&join) {
                    Some(&l) => {
                        if l != self.lca(g, g2) {
                            return false;
                        }
                    }
                    None => return false,
                }
            }
        }
        true
    }
}

/// Learns a hidden element of the class with the halving learner, using the
/// polynomial specifying sets and the Hasse degree as the size bound.
/// Returns the identified element and the transcript.
pub fn learn_disjunction(
    h: &HasseDiagram,
    oracle: &mut dyn AnswerOracle,
) -> Result<(usize, QueryTranscript)> {
    let matrix = h.induced_matrix();
    let e_bound = h.degree().max(1);
    let mut spec = |_live: &InstanceSet, hyp: &BitVector| Ok(h.specifying_set_poly(hyp, false));
    let t = solvers::moshkov_learn(&matrix, oracle, &mut spec, e_bound)?;
    let table = t.result.clone().expect("the learner always resolves");
    let idx = h
        .index_of(&table)
        .expect("the result is a row of the induced matrix");
    Ok((idx, t))
}

/// Parses the predicate spec format: a header `domain grid n m` or
/// `domain points m`, then one predicate per line, either named tables
/// (`name: 0101...`) or generator directives (`ray j i`, `raysum i`).
pub fn parse_predicate_file(text: &str, max_points: usize) -> Result<(Domain, Vec<Predicate>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("missing domain header".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let domain = match tokens.as_slice() {
        ["domain", "grid", n, m] => {
            let n = n
                .parse()
                .map_err(|_| Error::Format(format!("bad grid size in {header:?}")))?;
            let m = m
                .parse()
                .map_err(|_| Error::Format(format!("bad grid dimension in {header:?}")))?;
            Domain::grid(n, m, max_points)?
        }
        ["domain", "points", m] => {
            let m = m
                .parse()
                .map_err(|_| Error::Format(format!("bad point count in {header:?}")))?;
            if m > max_points {
                return Err(Error::DomainTooLarge {
                    points: m,
                    limit: max_points,
                });
            }
            Domain::points(m)?
        }
        _ => {
            return Err(Error::Format(format!(
                "header must be \"domain grid n m\" or \"domain points m\", got {header:?}"
            )))
        }
    };

    let mut preds = Vec::new();
    for line in lines {
        if let Some((name, bits)) = line.split_once(':') {
            let table: BitVector = bits.trim().parse()?;
            if table.width() != domain.size {
                return Err(Error::WidthMismatch {
                    left: domain.size,
                    right: table.width(),
                });
            }
            preds.push(Predicate {
                name: name.trim().to_string(),
                table,
            });
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["ray", j, i] => {
                let (n, m) = domain
                    .grid
                    .ok_or_else(|| Error::Format("ray directives need a grid domain".into()))?;
                let j: usize = j
                    .parse()
                    .map_err(|_| Error::Format(format!("bad ray coordinate in {line:?}")))?;
                let i: usize = i
                    .parse()
                    .map_err(|_| Error::Format(format!("bad ray threshold in {line:?}")))?;
                if j < 1 || j > m || i < 1 || i > n {
                    return Err(Error::Format(format!(
                        "ray {j} {i} outside the {n}^{m} grid"
                    )));
                }
                preds.push(ray_predicate(&domain, j - 1, i));
            }
            ["raysum", i] => {
                let (n, m) = domain
                    .grid
                    .ok_or_else(|| Error::Format("raysum directives need a grid domain".into()))?;
                let i: usize = i
                    .parse()
                    .map_err(|_| Error::Format(format!("bad raysum threshold in {line:?}")))?;
                if i < 1 || i + 1 > n * m {
                    return Err(Error::Format(format!("raysum {i} outside the grid sums")));
                }
                preds.push(ray_sum_predicate(&domain, i + 1, format!("h{i}")));
            }
            _ => {
                return Err(Error::Format(format!(
                    "unrecognized predicate line {line:?}"
                )))
            }
        }
    }
    if preds.is_empty() {
        return Err(Error::Format("predicate file defines no predicates".into()));
    }
    Ok((domain, preds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::FixedOracle;

    fn ray22() -> HasseDiagram {
        let (domain, preds) = gen_ray(2, 2, 64).unwrap();
        hasse_build(domain, preds).unwrap()
    }

    #[test]
    fn ray22_has_five_elements_and_degree_three() {
        let h = ray22();
        assert_eq!(h.len(), 5);
        assert_eq!(h.degree(), 3);
        let labels: Vec<String> = (0..h.len()).map(|g| h.element_label(g)).collect();
        assert_eq!(labels[h.bottom], "0");
        assert_eq!(labels[h.top], "f11\u{2228}f12\u{2228}f21\u{2228}f22");
        assert!(labels.contains(&"f12\u{2228}f22".to_string()));
        // The degree-3 element is f12 ∨ f22.
        let mid = (0..h.len())
            .find(|&g| h.element_label(g) == "f12\u{2228}f22")
            .unwrap();
        assert_eq!(h.deg(mid), 3);
    }

    #[test]
    fn ray22_lca_and_gcd() {
        let h = ray22();
        let f12 = h.index_of(&"0011".parse().unwrap()).unwrap();
        let f22 = h.index_of(&"0101".parse().unwrap()).unwrap();
        let join = h.index_of(&"0111".parse().unwrap()).unwrap();
        assert_eq!(h.lca(f12, f22), join);
        assert_eq!(h.lca(f12, f12), f12);
        assert_eq!(h.lca(h.bottom, join), join);
        assert_eq!(h.gcd(f12, f22).unwrap(), h.bottom);
        assert_eq!(h.gcd(join, f12).unwrap(), f12);
        assert!(h.validate_lemma_lca());
    }

    #[test]
    fn ray22_teaching_bound_components() {
        let h = ray22();
        let best = (0..h.len())
            .map(|g| {
                let (de, hs) = h.etd_components(g);
                de + hs
            })
            .max()
            .unwrap();
        assert_eq!(best, 3);
        assert_eq!(h.teaching_dim(), 3);
    }

    #[test]
    fn ray22_specifying_sets_are_small_and_specify() {
        let h = ray22();
        let matrix = h.induced_matrix();
        assert_eq!((matrix.len(), matrix.width()), (5, 4));
        for idx in 0..(1u64 << 4) {
            let hyp = BitVector::from_index(4, idx);
            let s = h.specifying_set_poly(&hyp, false);
            assert!(s.len() <= h.degree());
            let consistent = matrix
                .rows()
                .iter()
                .filter(|r| s.iter().all(|&p| r.get(p) == hyp.get(p)))
                .count();
            assert!(consistent <= 1, "hypothesis {hyp} keeps {consistent} rows");
        }
        // A hypothesis escaping the top element needs a single point.
        let above = BitVector::ones(4);
        let (domain, preds) = gen_ray(2, 2, 64).unwrap();
        let mut shrunk = preds;
        shrunk.retain(|p| p.name != "f11" && p.name != "f21");
        let small = hasse_build(domain, shrunk).unwrap();
        assert!(!above.implies(small.table(small.top)));
        assert_eq!(small.specifying_set_poly(&above, false).len(), 1);
    }

    #[test]
    fn ray_chain_closure_sizes() {
        let (domain, preds) = gen_ray(3, 1, 64).unwrap();
        assert_eq!(preds.len(), 3);
        let h = hasse_build(domain, preds).unwrap();
        assert_eq!(h.len(), 4, "a 1-d ray family closes into a chain");
        assert!((0..h.len()).all(|g| h.deg(g) <= 2));
    }

    #[test]
    fn ray42_has_degree_four() {
        let (domain, preds) = gen_ray(4, 2, 64).unwrap();
        let h = hasse_build(domain, preds).unwrap();
        assert_eq!(h.len(), 17);
        assert_eq!(h.degree(), 4);
    }

    #[test]
    fn gcd_is_unique_across_join_closed_families() {
        // Common descendants-or-self are closed under join, so their unique
        // maximum always exists; check every pair of two families.
        for h in [ray22(), {
            let (domain, preds) = gen_ray(4, 2, 64).unwrap();
            hasse_build(domain, preds).unwrap()
        }] {
            for g1 in 0..h.len() {
                for g2 in 0..h.len() {
                    let g = h.gcd(g1, g2).expect("join closure forces a unique maximum");
                    assert!(h.implies(g, g1) && h.implies(g, g2));
                    if h.implies(g1, g2) {
                        assert_eq!(g, g1);
                    }
                }
            }
        }
    }

    #[test]
    fn gen_ray_degree_stays_within_twice_the_dimension() {
        for (n, m) in [(2, 2), (3, 2), (2, 3), (3, 3), (5, 1)] {
            let (domain, preds) = gen_ray(n, m, 256).unwrap();
            let h = hasse_build(domain, preds).unwrap();
            assert!(
                h.degree() <= 2 * m,
                "ray {n}^{m} degree {} above {}",
                h.degree(),
                2 * m
            );
        }
    }

    #[test]
    fn ray_sum_family_shape() {
        let (domain, preds) = gen_ray_sum();
        assert_eq!(domain.size, 9);
        assert_eq!(preds.len(), 11);
        let ones = BitVector::ones(9);
        for name in ["f1", "g1", "h1"] {
            let p = preds.iter().find(|p| p.name == name).unwrap();
            assert_eq!(p.table, ones, "{name} is constant 1 on the grid");
        }
        let h = hasse_build(domain, preds).unwrap();
        assert!(h.degree() >= 3);
    }

    #[test]
    fn learning_identifies_every_element_of_ray22() {
        let h = ray22();
        for g in 0..h.len() {
            let mut oracle = FixedOracle::new(h.table(g).clone());
            let (found, t) = learn_disjunction(&h, &mut oracle).unwrap();
            assert_eq!(found, g);
            assert!(t.count() <= 4, "only four domain points exist");
        }
    }

    #[test]
    fn predicate_file_roundtrip() {
        let (domain, preds) = parse_predicate_file(
            "# a grid family\ndomain grid 2 2\nray 1 2\nray 2 2\np: 1000\n",
            64,
        )
        .unwrap();
        assert_eq!(domain.size, 4);
        assert_eq!(preds.len(), 3);
        assert_eq!(preds[0].name, "f12");
        assert_eq!(preds[2].table.to_string(), "1000");
        assert!(parse_predicate_file("domain grid 9 9\n", 64).is_err());
        assert!(parse_predicate_file("domain points 3\nray 1 1\n", 64).is_err());
        assert!(parse_predicate_file("domain points 3\nq: 01\n", 64).is_err());
    }

    #[test]
    fn single_predicate_closure_is_a_two_chain() {
        let domain = Domain::points(3).unwrap();
        let preds = vec![Predicate {
            name: "p".into(),
            table: "011".parse().unwrap(),
        }];
        let h = hasse_build(domain, preds).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.children[h.top], vec![h.bottom]);
        assert!((0..h.len()).all(|g| h.deg(g) == 1));
        let matrix = h.induced_matrix();
        assert_eq!((matrix.len(), matrix.width()), (2, 3));
    }
}
