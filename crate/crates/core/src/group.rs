//! Finite groups given by multiplication tables.
//!
//! Element 0 is always the identity. Constructors that build a table from a
//! rule (cyclic, dihedral, products, ...) produce it that way directly;
//! tables read from files are relabeled on load.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::numtheory::{self, lcm};

/// Largest group order any constructor accepts unless told otherwise.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("group order {order} exceeds the maximum of {max}")]
    TooLarge { order: usize, max: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed Cayley table: {0}")]
    Table(String),
    #[error("closure fails: entry ({0}, {1}) is out of range")]
    Closure(usize, usize),
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    orders: Vec<u64>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("element_orders", &self.orders)
            .finish()
    }
}

/// The cyclic subgroup generated by one element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicSubgroup {
    pub generator: usize,
    pub members: BTreeSet<usize>,
}

impl CyclicSubgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(&g)
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication rule that is already known to be a
    /// group law with identity 0.
    fn from_rule(order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b) as u32);
            }
        }
        Self::from_trusted_table(order, table)
    }

    fn from_trusted_table(order: usize, table: Vec<u32>) -> Self {
        let mut group = FiniteGroup {
            order,
            table,
            orders: Vec::new(),
        };
        group.orders = (0..order).map(|g| group.compute_order(g)).collect();
        group
    }

    fn compute_order(&self, g: usize) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn element_order(&self, g: usize) -> u64 {
        self.orders[g]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order)
            .find(|&h| self.mul(g, h) == 0)
            .expect("every group element has an inverse")
    }

    /// Row `a` of the multiplication table.
    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&x| x as usize)
    }

    /// `[g, g^2, ..., g^{o(g)} = e]`.
    pub fn powers(&self, g: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.orders[g] as usize);
        let mut x = g;
        loop {
            out.push(x);
            if x == 0 {
                break;
            }
            x = self.mul(x, g);
        }
        out
    }

    pub fn cyclic_subgroup(&self, g: usize) -> CyclicSubgroup {
        CyclicSubgroup {
            generator: g,
            members: self.powers(g).into_iter().collect(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o as usize == self.order)
    }

    /// Number of elements of each order, keyed by order.
    pub fn order_census(&self) -> std::collections::BTreeMap<u64, usize> {
        let mut census = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *census.entry(o).or_insert(0) += 1;
        }
        census
    }

    /// The multiplication table as rows, e.g. for writing a table file.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).collect()).collect()
    }

    /// All maximal cyclic subgroups, or the whole group when it is cyclic.
    ///
    /// Each subgroup is reported once, represented by its smallest-index
    /// generator, in ascending order of that generator.
    pub fn maximal_cyclic_subgroups(&self) -> Vec<CyclicSubgroup> {
        if let Some(g) = (0..self.order).find(|&g| self.orders[g] as usize == self.order) {
            return vec![self.cyclic_subgroup(g)];
        }
        // x is non-maximal when it is a proper power of some other element
        let mut dominated = vec![false; self.order];
        for h in 0..self.order {
            let oh = self.orders[h];
            for x in self.powers(h) {
                if self.orders[x] < oh {
                    dominated[x] = true;
                }
            }
        }
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut out = Vec::new();
        for (g, _) in dominated.iter().enumerate().filter(|(_, &d)| !d) {
            let sub = self.cyclic_subgroup(g);
            let key: Vec<usize> = sub.members.iter().copied().collect();
            if seen.insert(key, g).is_none() {
                out.push(sub);
            }
        }
        out
    }

    /// One generator per covering cycle, smallest index first.
    pub fn ccg_ground_truth(&self) -> BTreeSet<usize> {
        self.maximal_cyclic_subgroups()
            .into_iter()
            .map(|c| c.generator)
            .collect()
    }

    /// Nilpotency via closure of the p-element sets for each prime `p | n`.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.order as u64;
        numtheory::factorize(n).primes().all(|p| {
            let p_elements: Vec<usize> = (0..self.order)
                .filter(|&g| numtheory::is_power_of(self.orders[g], p))
                .collect();
            p_elements.iter().all(|&a| {
                p_elements
                    .iter()
                    .all(|&b| numtheory::is_power_of(self.orders[self.mul(a, b)], p))
            })
        })
    }
}

pub fn cyclic_group(n: usize) -> Result<FiniteGroup, GroupError> {
    check_order(n, DEFAULT_MAX_ORDER)?;
    Ok(FiniteGroup::from_rule(n, |a, b| (a + b) % n))
}

/// Dihedral group with `2k` elements. Element `i + k*j` stands for `r^i s^j`.
pub fn dihedral_group(k: usize) -> Result<FiniteGroup, GroupError> {
    if k == 0 {
        return Err(GroupError::ZeroOrder);
    }
    check_order(2 * k, DEFAULT_MAX_ORDER)?;
    Ok(FiniteGroup::from_rule(2 * k, |a, b| {
        let (i, j) = (a % k, a / k);
        let (c, d) = (b % k, b / k);
        let rot = if j == 0 { (i + c) % k } else { (i + k - c) % k };
        rot + k * ((j + d) % 2)
    }))
}

/// Quaternion group. Labels: 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion_group() -> FiniteGroup {
    // unit index u in {0:1, 1:i, 2:j, 3:k} with sign bit s; element = 2u + s
    fn unit_mul(a: usize, b: usize) -> (usize, bool) {
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    FiniteGroup::from_rule(8, |a, b| {
        let (u, neg) = unit_mul(a / 2, b / 2);
        let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
        2 * u + sign
    })
}

/// Upper unitriangular 3x3 matrices over F_p. Element `a*p^2 + b*p + c` is
/// the matrix with superdiagonal `(a, b)` and corner `c`.
pub fn heisenberg_group(p: u64) -> Result<FiniteGroup, GroupError> {
    if !numtheory::is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let p = p as usize;
    check_order(p.saturating_mul(p).saturating_mul(p), DEFAULT_MAX_ORDER)?;
    Ok(FiniteGroup::from_rule(p * p * p, |x, y| {
        let (a, b, c) = (x / (p * p), (x / p) % p, x % p);
        let (a2, b2, c2) = (y / (p * p), (y / p) % p, y % p);
        let na = (a + a2) % p;
        let nb = (b + b2) % p;
        let nc = (c + c2 + a * b2) % p;
        na * p * p + nb * p + nc
    }))
}

/// `Z_p^k`.
pub fn elementary_abelian(p: u64, k: u32) -> Result<FiniteGroup, GroupError> {
    if !numtheory::is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if k == 0 {
        return Err(GroupError::ZeroOrder);
    }
    let zp = cyclic_group(p as usize)?;
    let mut g = zp.clone();
    for _ in 1..k {
        g = direct_product(&g, &zp)?;
    }
    Ok(g)
}

/// `G x H` with element `(g, h)` at index `g*|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    direct_product_capped(g, h, DEFAULT_MAX_ORDER)
}

pub fn direct_product_capped(
    g: &FiniteGroup,
    h: &FiniteGroup,
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    let m = h.order();
    let n = g.order().checked_mul(m).ok_or(GroupError::TooLarge {
        order: usize::MAX,
        max: max_order,
    })?;
    check_order(n, max_order)?;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let x = g.mul(a / m, b / m);
            let y = h.mul(a % m, b % m);
            table.push((x * m + y) as u32);
        }
    }
    let orders = (0..n)
        .map(|a| lcm(g.element_order(a / m), h.element_order(a % m)))
        .collect();
    Ok(FiniteGroup {
        order: n,
        table,
        orders,
    })
}

fn check_order(n: usize, max: usize) -> Result<(), GroupError> {
    if n == 0 {
        Err(GroupError::ZeroOrder)
    } else if n > max {
        Err(GroupError::TooLarge { order: n, max })
    } else {
        Ok(())
    }
}

/// Validates a Cayley table and relabels its identity to index 0.
pub fn group_from_cayley_table(rows: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    let n = rows.len();
    check_order(n, DEFAULT_MAX_ORDER)?;
    for (a, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::Table(format!(
                "row {a} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(b) = row.iter().position(|&x| x >= n) {
            return Err(GroupError::Closure(a, b));
        }
    }
    let t = |a: usize, b: usize| rows[a][b];
    let e = (0..n)
        .find(|&e| (0..n).all(|x| t(e, x) == x && t(x, e) == x))
        .ok_or(GroupError::NoIdentity)?;
    for a in 0..n {
        if !(0..n).any(|b| t(a, b) == e && t(b, a) == e) {
            return Err(GroupError::NoInverse(a));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = t(a, b);
            for c in 0..n {
                if t(ab, c) != t(a, t(b, c)) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
    }
    // swap labels e and 0
    let relabel = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[relabel(a) * n + relabel(b)] = relabel(t(a, b)) as u32;
        }
    }
    Ok(FiniteGroup::from_trusted_table(n, table))
}

/// Parses the text form of a Cayley table: the order on the first line, then
/// one row of space-separated entries per line.
pub fn parse_cayley_table(text: &str) -> Result<FiniteGroup, GroupError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| GroupError::Table("empty table file".into()))?
        .trim()
        .parse()
        .map_err(|_| GroupError::Table("first line must be the group order".into()))?;
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let row = line
            .split_whitespace()
            .map(|tok| tok.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GroupError::Table(format!("row {i} has a non-integer entry")))?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(GroupError::Table(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    group_from_cayley_table(&rows)
}

pub fn write_cayley_table(group: &FiniteGroup) -> String {
    let mut out = format!("{}\n", group.order());
    for a in 0..group.order() {
        let row: Vec<String> = group.row(a).map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_cayley_table_file(path: impl AsRef<Path>) -> Result<FiniteGroup, GroupError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_cayley_table(&text)
}

/// One factor of a group expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupTerm {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion,
    Heisenberg(u64),
    ElementaryAbelian(u64, u32),
    File(String),
}

/// A parsed group expression: the direct product of its terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub terms: Vec<GroupTerm>,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        SpecParser { text, pos: 0 }.parse()
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let mut acc: Option<FiniteGroup> = None;
        for term in &self.terms {
            let g = term.build()?;
            acc = Some(match acc {
                None => g,
                Some(prev) => direct_product(&prev, &g)?,
            });
        }
        acc.ok_or(GroupError::Parse {
            position: 0,
            message: "empty group expression".into(),
        })
    }
}

impl GroupTerm {
    fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupTerm::Cyclic(n) => cyclic_group(*n),
            GroupTerm::Dihedral(k) => dihedral_group(*k),
            GroupTerm::Quaternion => Ok(quaternion_group()),
            GroupTerm::Heisenberg(p) => heisenberg_group(*p),
            GroupTerm::ElementaryAbelian(p, k) => elementary_abelian(*p, *k),
            GroupTerm::File(path) => read_cayley_table_file(path),
        }
    }
}

/// Parses `Z6`, `Z4xZ3`, `D4xQ8`, `ElemAb(3,3)`, `Heis3`, `file:PATH`, ...
///
/// A `file:` term takes the rest of the input as its path, so it must come
/// last.
pub fn parse_group_spec(text: &str) -> Result<FiniteGroup, GroupError> {
    GroupSpec::parse(text)?.build()
}

struct SpecParser<'a> {
    text: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, GroupError> {
        Err(GroupError::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, GroupError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected a number");
        }
        let value = self.rest()[..digits].parse::<u64>();
        match value {
            Ok(v) if v >= 1 => {
                self.pos += digits;
                Ok(v)
            }
            Ok(_) => self.err("parameter must be at least 1"),
            Err(_) => self.err("number too large"),
        }
    }

    fn parse(mut self) -> Result<GroupSpec, GroupError> {
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            let term = self.term()?;
            let is_file = matches!(term, GroupTerm::File(_));
            terms.push(term);
            if is_file {
                break;
            }
            self.skip_ws();
            if self.pos == self.text.len() {
                break;
            }
            if !self.eat("x") {
                return self.err("expected 'x' between factors");
            }
        }
        Ok(GroupSpec { terms })
    }

    fn term(&mut self) -> Result<GroupTerm, GroupError> {
        if self.eat("file:") {
            let path = self.rest().trim().to_string();
            if path.is_empty() {
                return self.err("missing path after 'file:'");
            }
            self.pos = self.text.len();
            return Ok(GroupTerm::File(path));
        }
        if self.eat("ElemAb(") {
            let start = self.pos;
            let p = self.number()?;
            if !numtheory::is_prime(p) {
                self.pos = start;
                return self.err(format!("{p} is not prime"));
            }
            if !self.eat(",") {
                return self.err("expected ','");
            }
            let k = self.number()?;
            if !self.eat(")") {
                return self.err("expected ')'");
            }
            let k = u32::try_from(k).or_else(|_| self.err("exponent too large"))?;
            return Ok(GroupTerm::ElementaryAbelian(p, k));
        }
        if self.eat("Heis") {
            let start = self.pos;
            let p = self.number()?;
            if !numtheory::is_prime(p) {
                self.pos = start;
                return self.err(format!("Heis{p}: {p} is not prime"));
            }
            return Ok(GroupTerm::Heisenberg(p));
        }
        if self.eat("Q8") {
            return Ok(GroupTerm::Quaternion);
        }
        if self.eat("Z") {
            return Ok(GroupTerm::Cyclic(self.number()? as usize));
        }
        if self.eat("D") {
            return Ok(GroupTerm::Dihedral(self.number()? as usize));
        }
        self.err("expected one of Z, D, Q8, Heis, ElemAb(, file:")
    }
}
