//! Finite groups as explicit operation tables. Element ids are `0..order`
//! with `0` always the identity; tables make walk values O(walk length).

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// Invariants checked at construction: associativity (full triple
/// enumeration, so orders are capped at 64), a two-sided identity at id 0,
/// and a correct two-sided inverse table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    op: Vec<u8>,
    inverse: Vec<u8>,
    name: String,
}

pub const MAX_GROUP_ORDER: usize = 64;

/// Orders above this are rejected by [`group_isomorphic`].
pub const MAX_ISO_ORDER: usize = 12;

impl FiniteGroup {
    /// Build a group from a raw operation table (row-major, `order * order`
    /// entries). Fails unless the table satisfies the group axioms with
    /// identity 0.
    pub fn from_table(order: usize, op: Vec<u8>, name: impl Into<String>) -> Result<Self> {
        if order == 0 || order > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {order} outside supported range 1..={MAX_GROUP_ORDER}"
            )));
        }
        if op.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                op.len(),
                order * order
            )));
        }
        if op.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        let at = |a: usize, b: usize| op[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidGroup("id 0 is not a two-sided identity".into()));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![u8::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => inverse[a] = b as u8,
                None => {
                    return Err(Error::InvalidGroup(format!("element {a} has no inverse")))
                }
            }
        }
        Ok(FiniteGroup { order, op, inverse, name: name.into() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn raw_table(&self) -> &[u8] {
        &self.op
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.op(x, a);
            n += 1;
        }
        n
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

/// The cyclic group Z_m under addition mod m.
pub fn cyclic_group(m: usize) -> FiniteGroup {
    assert!(m >= 1, "cyclic group order must be positive");
    let mut op = vec![0u8; m * m];
    for a in 0..m {
        for b in 0..m {
            op[a * m + b] = ((a + b) % m) as u8;
        }
    }
    FiniteGroup::from_table(m, op, format!("Z{m}")).expect("cyclic table is a group")
}

/// Componentwise product; element (a, b) gets id `a * |g2| + b`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup> {
    let n1 = g1.order();
    let n2 = g2.order();
    let n = n1 * n2;
    if n > MAX_GROUP_ORDER {
        return Err(Error::InvalidGroup(format!(
            "product order {n} exceeds cap {MAX_GROUP_ORDER}"
        )));
    }
    let mut op = vec![0u8; n * n];
    for a1 in 0..n1 {
        for b1 in 0..n2 {
            for a2 in 0..n1 {
                for b2 in 0..n2 {
                    let x = a1 * n2 + b1;
                    let y = a2 * n2 + b2;
                    op[x * n + y] = (g1.op(a1, a2) * n2 + g2.op(b1, b2)) as u8;
                }
            }
        }
    }
    FiniteGroup::from_table(n, op, format!("{}x{}", g1.name(), g2.name()))
}

/// The symmetric group on three letters, the smallest non-abelian group.
/// Elements are permutations of `[0,1,2]`; identity first.
pub fn symmetric_3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let index = |p: &[usize; 3]| perms.iter().position(|x| x == p).unwrap();
    let mut op = vec![0u8; 36];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            op[i * 6 + j] = index(&compose(p, q)) as u8;
        }
    }
    FiniteGroup::from_table(6, op, "S3").expect("S3 table is a group")
}

/// True iff some bijection carries one operation table to the other.
/// Brute force with identity/element-order pruning; intended for small orders.
pub fn group_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<bool> {
    if g1.order() != g2.order() {
        return Ok(false);
    }
    let n = g1.order();
    if n > MAX_ISO_ORDER {
        return Err(Error::Unsupported(format!(
            "group isomorphism search capped at order {MAX_ISO_ORDER}, got {n}"
        )));
    }
    if g1.order_profile() != g2.order_profile() {
        return Ok(false);
    }

    // Backtracking assignment g1 -> g2; identity is pinned, partial maps must
    // already respect every product with both factors assigned.
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    fn extend(
        g1: &FiniteGroup,
        g2: &FiniteGroup,
        map: &mut [usize],
        used: &mut [bool],
        next: usize,
    ) -> bool {
        let n = g1.order();
        if next == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || g1.element_order(next) != g2.element_order(cand) {
                continue;
            }
            map[next] = cand;
            used[cand] = true;
            let mut ok = true;
            'check: for a in 0..=next {
                for b in 0..=next {
                    let p = g1.op(a, b);
                    if map[a] != usize::MAX
                        && map[b] != usize::MAX
                        && map[p] != usize::MAX
                        && g2.op(map[a], map[b]) != map[p]
                    {
                        ok = false;
                        break 'check;
                    }
                }
            }
            if ok && extend(g1, g2, map, used, next + 1) {
                return true;
            }
            map[next] = usize::MAX;
            used[cand] = false;
        }
        false
    }
    Ok(extend(g1, g2, &mut map, &mut used, 1))
}

/// Named groups used throughout the test catalog.
pub fn catalog() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=8).map(cyclic_group).collect();
    let z2 = cyclic_group(2);
    let z2z2 = direct_product(&z2, &z2).unwrap();
    let z2z2z2 = direct_product(&z2z2, &z2).unwrap();
    out.push(z2z2);
    out.push(z2z2z2);
    out.push(symmetric_3());
    out
}

/// Parse a group spec such as `z1`, `z4`, `z2^2`, `z2xz3`, or `s3`.
pub fn parse_group_name(token: &str) -> Result<FiniteGroup> {
    let t = token.to_ascii_lowercase();
    if t == "s3" {
        return Ok(symmetric_3());
    }
    let parse_cyclic = |s: &str| -> Result<FiniteGroup> {
        let m: usize = s
            .strip_prefix('z')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::InvalidGroup(format!("unknown group spec `{token}`")))?;
        if m == 0 || m > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!("unsupported cyclic order {m}")));
        }
        Ok(cyclic_group(m))
    };
    if let Some((base, exp)) = t.split_once('^') {
        let g = parse_cyclic(base)?;
        let e: usize = exp
            .parse()
            .map_err(|_| Error::InvalidGroup(format!("bad exponent in `{token}`")))?;
        if e == 0 {
            return Ok(cyclic_group(1));
        }
        let mut acc = g.clone();
        for _ in 1..e {
            acc = direct_product(&acc, &g)?;
        }
        return Ok(acc);
    }
    if let Some((a, b)) = t.split_once('x') {
        let ga = parse_group_name(a)?;
        let gb = parse_group_name(b)?;
        return direct_product(&ga, &gb);
    }
    parse_cyclic(&t)
}

/// Serialize in the exchange format: `group <order>` then the table row-major.
pub fn write_group(g: &FiniteGroup) -> String {
    let mut s = format!("group {}\n", g.order());
    for a in 0..g.order() {
        let row: Vec<String> = (0..g.order()).map(|b| g.op(a, b).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Parse the exchange format produced by [`write_group`]. Returns the group
/// and the number of lines consumed.
pub fn read_group(lines: &[&str], start_line: usize) -> Result<(FiniteGroup, usize)> {
    let header = lines.first().ok_or(Error::Parse {
        line: start_line,
        msg: "missing `group <order>` header".into(),
    })?;
    let order: usize = header
        .strip_prefix("group ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or(Error::Parse { line: start_line, msg: format!("bad group header `{header}`") })?;
    let mut entries = Vec::with_capacity(order * order);
    let mut consumed = 1;
    while entries.len() < order * order {
        let line = lines.get(consumed).ok_or(Error::Parse {
            line: start_line + consumed,
            msg: "group table ended early".into(),
        })?;
        for tok in line.split_whitespace() {
            let v: u8 = tok.parse().map_err(|_| Error::Parse {
                line: start_line + consumed,
                msg: format!("bad table entry `{tok}`"),
            })?;
            entries.push(v);
        }
        consumed += 1;
    }
    if entries.len() != order * order {
        return Err(Error::Parse {
            line: start_line + consumed,
            msg: "too many table entries".into(),
        });
    }
    let g = FiniteGroup::from_table(order, entries, format!("imported-{order}"))?;
    Ok((g, consumed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = cyclic_group(1);
        assert_eq!(g.order(), 1);
        assert_eq!(g.op(0, 0), 0);
    }

    #[test]
    fn z2_table_forced_by_axioms() {
        let g = cyclic_group(2);
        assert_eq!(g.raw_table(), &[0, 1, 1, 0]);
    }

    #[test]
    fn z6_generator_has_order_six() {
        let g = cyclic_group(6);
        assert_eq!(g.element_order(1), 6);
        let mut x = 1;
        for _ in 0..5 {
            x = g.op(x, 1);
        }
        assert_eq!(x, 0);
    }

    #[test]
    fn klein_four_has_involutions_only() {
        let z2 = cyclic_group(2);
        let v4 = direct_product(&z2, &z2).unwrap();
        assert_eq!(v4.order(), 4);
        for a in 1..4 {
            assert_eq!(v4.element_order(a), 2);
        }
    }

    #[test]
    fn product_with_trivial_is_same_group() {
        let g = symmetric_3();
        let p = direct_product(&cyclic_group(1), &g).unwrap();
        assert!(group_isomorphic(&p, &g).unwrap());
    }

    #[test]
    fn z2_x_z3_is_z6() {
        let p = direct_product(&cyclic_group(2), &cyclic_group(3)).unwrap();
        assert!(group_isomorphic(&p, &cyclic_group(6)).unwrap());
    }

    #[test]
    fn z4_is_not_klein_four() {
        let z2 = cyclic_group(2);
        let v4 = direct_product(&z2, &z2).unwrap();
        assert!(!group_isomorphic(&cyclic_group(4), &v4).unwrap());
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric_on_catalog() {
        let cat = catalog();
        for g in &cat {
            if g.order() <= MAX_ISO_ORDER {
                assert!(group_isomorphic(g, g).unwrap(), "{} not self-isomorphic", g.name());
            }
        }
        for a in &cat {
            for b in &cat {
                if a.order() <= MAX_ISO_ORDER && b.order() <= MAX_ISO_ORDER {
                    assert_eq!(
                        group_isomorphic(a, b).unwrap(),
                        group_isomorphic(b, a).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn associativity_holds_for_catalog() {
        // from_table re-checks axioms, so building the catalog is the test
        for g in catalog() {
            for a in 0..g.order().min(6) {
                for b in 0..g.order().min(6) {
                    for c in 0..g.order().min(6) {
                        assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn s3_is_not_abelian() {
        let g = symmetric_3();
        assert!((0..6).any(|a| (0..6).any(|b| g.op(a, b) != g.op(b, a))));
    }

    #[test]
    fn group_roundtrip_through_text() {
        for g in catalog() {
            let text = write_group(&g);
            let lines: Vec<&str> = text.lines().collect();
            let (h, used) = read_group(&lines, 1).unwrap();
            assert_eq!(used, lines.len());
            assert_eq!(g.raw_table(), h.raw_table());
            assert_eq!(write_group(&h), text);
        }
    }

    #[test]
    fn parse_group_specs() {
        assert_eq!(parse_group_name("z4").unwrap().order(), 4);
        assert_eq!(parse_group_name("z2^2").unwrap().order(), 4);
        assert_eq!(parse_group_name("z2xz3").unwrap().order(), 6);
        assert_eq!(parse_group_name("s3").unwrap().order(), 6);
        assert!(parse_group_name("q8x").is_err());
    }

    #[test]
    fn iso_search_rejects_large_orders() {
        let g = cyclic_group(16);
        assert!(group_isomorphic(&g, &g).is_err());
    }
}
