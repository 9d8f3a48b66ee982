use super::{FiniteGroup, GROUP_ORDER_CEILING, MAX_GROUP_ORDER};
use crate::error::{Error, Result};

fn check_order(order: usize) -> Result<()> {
    check_order_bounded(order, MAX_GROUP_ORDER)
}

fn check_order_bounded(order: usize, max_order: usize) -> Result<()> {
    let cap = max_order.min(GROUP_ORDER_CEILING);
    if order > cap {
        return Err(Error::ResourceLimit(format!("group order {order} exceeds the cap of {cap}")));
    }
    Ok(())
}

fn power_name(sym: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

/// `Z_n`, elements named by their residues.
pub fn build_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group needs n >= 1".into()));
    }
    check_order(n)?;
    let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    let names = (0..n).map(|i| i.to_string()).collect();
    let symbols = if n > 1 { vec![("a".to_string(), 1)] } else { Vec::new() };
    Ok(FiniteGroup::from_table(n, table, Some(names))?
        .with_symbols(symbols)
        .with_label(format!("cyclic:{n}")))
}

/// `D_n` of order `2n`: index `i < n` is `a^i`, index `n + i` is `a^i*b`.
pub fn build_dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidParameter("dihedral group needs n >= 2".into()));
    }
    check_order(2 * n)?;
    let order = 2 * n;
    let mut table = vec![0; order * order];
    for x in 0..order {
        let (i, e) = (x % n, x / n);
        for y in 0..order {
            let (j, f) = (y % n, y / n);
            let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
            table[x * order + y] = k + n * ((e + f) % 2);
        }
    }
    let names = (0..order)
        .map(|x| {
            let (i, e) = (x % n, x / n);
            match (i, e) {
                (0, 0) => "1".to_string(),
                (_, 0) => power_name("a", i),
                (0, _) => "b".to_string(),
                _ => format!("{}*b", power_name("a", i)),
            }
        })
        .collect();
    Ok(FiniteGroup::from_table(order, table, Some(names))?
        .with_symbols(vec![("a".into(), 1), ("b".into(), n)])
        .with_label(format!("dihedral:{n}")))
}

/// `D(A) = <A, t>` with `t^2 = 1` and `x^t = x^{-1}`: index `x` is `x`,
/// index `|A| + x` is `x*t`.
pub fn build_generalized_dihedral(a: &FiniteGroup) -> Result<FiniteGroup> {
    if !a.is_abelian() {
        return Err(Error::InvalidParameter(
            "generalized dihedral group needs an abelian base".into(),
        ));
    }
    let m = a.order();
    let order = 2 * m;
    check_order(order)?;
    let mut table = vec![0; order * order];
    for x in 0..order {
        let (xa, e) = (x % m, x / m);
        for y in 0..order {
            let (ya, f) = (y % m, y / m);
            let twisted = if e == 0 { ya } else { a.inv(ya) };
            table[x * order + y] = a.mul(xa, twisted) + m * ((e + f) % 2);
        }
    }
    let names = (0..order)
        .map(|x| {
            let (xa, e) = (x % m, x / m);
            match e {
                0 => a.name(xa).to_string(),
                _ if xa == a.identity() => "t".to_string(),
                _ => format!("{}*t", a.name(xa)),
            }
        })
        .collect();
    let mut symbols: Vec<(String, usize)> =
        a.symbols().iter().filter(|(s, _)| s != "t").cloned().collect();
    symbols.push(("t".into(), m + a.identity()));
    let label = if a.label().is_empty() {
        String::new()
    } else {
        format!("gendih:{}", a.label())
    };
    Ok(FiniteGroup::from_table(order, table, Some(names))?
        .with_symbols(symbols)
        .with_label(label))
}

/// `G x H`; index `g * |H| + h`, named `(g,h)`.
pub fn build_direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (m, k) = (g.order(), h.order());
    let order = m * k;
    check_order(order)?;
    let mut table = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            table[x * order + y] = g.mul(x / k, y / k) * k + h.mul(x % k, y % k);
        }
    }
    let names = (0..order)
        .map(|x| format!("({},{})", g.name(x / k), h.name(x % k)))
        .collect();
    let label = if g.label().is_empty() || h.label().is_empty() {
        String::new()
    } else {
        format!("product:({}),({})", g.label(), h.label())
    };
    Ok(FiniteGroup::from_table(order, table, Some(names))?.with_label(label))
}

/// `Q_8` with index `2u + s`, `u` in `1,i,j,k` and `s = 1` for the negative unit.
pub fn build_quaternion() -> FiniteGroup {
    // unit product table: (sign, unit) of u*v for units 1,i,j,k
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mut table = vec![0; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (neg, u) = UNIT[x / 2][y / 2];
            let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
            table[x * 8 + y] = 2 * u + sign;
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_table(8, table, Some(names))
        .expect("quaternion table is a group")
        .with_symbols(vec![("i".into(), 2), ("j".into(), 4), ("k".into(), 6)])
        .with_label("quaternion")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `<a, b | a^m = 1, b^s = a^t, b^-1 a b = a^r>` realized on the normal forms
/// `a^i b^j` (index `i + m*j`). Consistency is checked by auditing the
/// resulting table rather than by number-theoretic conditions.
pub fn build_metacyclic(m: usize, r: usize, s: usize, t: usize) -> Result<FiniteGroup> {
    build_metacyclic_bounded(m, r, s, t, MAX_GROUP_ORDER)
}

/// [`build_metacyclic`] with an explicit order cap.
pub fn build_metacyclic_bounded(m: usize, r: usize, s: usize, t: usize, max_order: usize) -> Result<FiniteGroup> {
    if m == 0 || s == 0 {
        return Err(Error::InvalidParameter("metacyclic needs m >= 1 and s >= 1".into()));
    }
    let order = m * s;
    check_order_bounded(order, max_order)?;
    let (r, t) = (r % m, t % m);
    if gcd(r.max(1), m) != 1 || (m > 1 && r == 0) {
        return Err(Error::InvalidPresentation(format!(
            "r = {r} is not a unit modulo {m}; conjugation by b cannot be an automorphism of <a>"
        )));
    }
    // b a b^-1 = a^u with u = r^-1 mod m
    let u = (0..m).find(|&u| (u * r) % m == 1 % m).unwrap_or(0);
    let mut upow = vec![1 % m; s + 1];
    for j in 1..=s {
        upow[j] = (upow[j - 1] * u) % m;
    }
    let mut table = vec![0; order * order];
    for x in 0..order {
        let (i, j) = (x % m, x / m);
        for y in 0..order {
            let (k, l) = (y % m, y / m);
            // a^i b^j a^k b^l = a^(i + k u^j) b^(j+l), reducing b^s = a^t
            let mut ai = (i + k * upow[j]) % m;
            let mut bj = j + l;
            if bj >= s {
                bj -= s;
                ai = (ai + t * upow[bj]) % m;
            }
            table[x * order + y] = ai + m * bj;
        }
    }
    let names = (0..order)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            match (power_name("a", i), power_name("b", j)) {
                (a, b) if a.is_empty() && b.is_empty() => "1".to_string(),
                (a, b) if b.is_empty() => a,
                (a, b) if a.is_empty() => b,
                (a, b) => format!("{a}*{b}"),
            }
        })
        .collect();
    let group = FiniteGroup::from_table_bounded(order, table, Some(names), max_order).map_err(|e| match e {
        Error::InvalidPresentation(msg) => {
            Error::InvalidPresentation(format!("metacyclic:{m},{r},{s},{t}: {msg}"))
        }
        other => other,
    })?;
    let mut symbols = Vec::new();
    if m > 1 {
        symbols.push(("a".to_string(), 1));
    }
    if s > 1 {
        symbols.push(("b".to_string(), m));
    }
    Ok(group.with_symbols(symbols).with_label(format!("metacyclic:{m},{r},{s},{t}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;

    #[test]
    fn dihedral_relations() {
        let d6 = build_dihedral(6).unwrap();
        let (a, b) = (1, 6);
        assert_eq!(d6.mul(d6.mul(b, a), b), 5);
        assert_eq!(d6.element_order(a), 6);
        assert_eq!(d6.element_order(b), 2);
        assert!(!build_dihedral(3).unwrap().is_abelian());
        assert_eq!(build_dihedral(3).unwrap().order(), 6);
        assert!(build_dihedral(1).is_err());
    }

    #[test]
    fn klein_is_d2() {
        let d2 = build_dihedral(2).unwrap();
        let z2 = build_cyclic(2).unwrap();
        let k = build_direct_product(&z2, &z2).unwrap();
        assert!(d2.is_abelian());
        assert!(find_isomorphism(&d2, &k).is_some());
    }

    #[test]
    fn generalized_dihedral_shapes() {
        let z3 = build_cyclic(3).unwrap();
        let a = build_direct_product(&z3, &z3).unwrap();
        let d = build_generalized_dihedral(&a).unwrap();
        assert_eq!(d.order(), 18);
        for x in 9..18 {
            assert_eq!(d.element_order(x), 2);
        }
        let z2 = build_cyclic(2).unwrap();
        let klein = build_direct_product(&z2, &z2).unwrap();
        let d = build_generalized_dihedral(&klein).unwrap();
        assert_eq!(d.order(), 8);
        assert!(d.is_abelian());
        assert!(build_generalized_dihedral(&build_dihedral(3).unwrap()).is_err());
    }

    #[test]
    fn generalized_dihedral_of_cyclic_is_dihedral() {
        for n in 2..=12 {
            let g = build_generalized_dihedral(&build_cyclic(n).unwrap()).unwrap();
            let d = build_dihedral(n).unwrap();
            assert!(find_isomorphism(&g, &d).is_some(), "n = {n}");
        }
    }

    #[test]
    fn products() {
        let z2 = build_cyclic(2).unwrap();
        let k = build_direct_product(&z2, &z2).unwrap();
        assert_eq!(k.order(), 4);
        assert!((0..4).all(|x| k.mul(x, x) == k.identity()));
        let g = build_direct_product(&build_cyclic(6).unwrap(), &build_cyclic(3).unwrap()).unwrap();
        assert_eq!(g.order(), 18);
        assert!(g.is_abelian());
        let g = build_direct_product(&build_dihedral(3).unwrap(), &z2).unwrap();
        assert_eq!(g.order(), 12);
        assert!(!g.is_abelian());
    }

    #[test]
    fn quaternion_table() {
        let q = build_quaternion();
        let (i, j, k, m1) = (2, 4, 6, 1);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), 7);
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(j, j), m1);
        assert_eq!(q.mul(k, k), m1);
        assert_eq!((0..8).filter(|&x| q.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn metacyclic_instances() {
        let q = build_metacyclic(4, 3, 2, 2).unwrap();
        assert!(find_isomorphism(&q, &build_quaternion()).is_some());
        for n in 3..=9 {
            let g = build_metacyclic(n, n - 1, 2, 0).unwrap();
            assert!(find_isomorphism(&g, &build_dihedral(n).unwrap()).is_some());
        }
        assert_eq!(build_metacyclic(9, 4, 3, 3).unwrap().order(), 27);
    }

    #[test]
    fn metacyclic_inconsistent() {
        // b^2 = a forces a to commute with b, contradicting a^b = a^2 in Z_3.
        assert!(matches!(
            build_metacyclic(3, 2, 2, 1),
            Err(Error::InvalidPresentation(_))
        ));
        assert!(matches!(
            build_metacyclic(4, 2, 2, 0),
            Err(Error::InvalidPresentation(_))
        ));
    }
}
