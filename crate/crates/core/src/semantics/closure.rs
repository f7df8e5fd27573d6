use super::{Conditions, Family, FrameCondition, NbModel};

fn close_world(m: &mut NbModel, w: usize, cs: &Conditions) -> bool {
    use FrameCondition::*;
    let n = m.size();
    let full = m.full();
    let mut nb = m.nbox[w];
    let mut nd = m.ndiam[w];
    for &c in cs {
        match c {
            SuppBox => nb.upward_closure(n),
            SuppDia => nd.upward_closure(n),
            CapBox => loop {
                let items: Vec<_> = nb.iter().collect();
                let mut grew = false;
                for (i, &a) in items.iter().enumerate() {
                    for &b in &items[i + 1..] {
                        grew |= nb.insert(a & b);
                    }
                }
                if !grew {
                    break;
                }
            },
            UnitBox => {
                nb.insert(full);
            }
            UnitDia => {
                nd.insert(full);
            }
            WInt1 => {
                nd.union_with(&nb);
            }
            WInt2a => {
                for a in nb.iter().collect::<Vec<_>>() {
                    nd.insert(full & !m.upset_complement(a));
                }
            }
            WInt2b => {
                for a in 0..=full {
                    if nb.contains(m.upset_complement(a)) {
                        nd.insert(full & !a);
                    }
                }
            }
            WInt3 => {
                let mut up = nb;
                up.upward_closure(n);
                nd.union_with(&up);
            }
            CKInt => loop {
                let bs: Vec<_> = nd.iter().collect();
                let mut grew = false;
                for a in nb.iter() {
                    for &b in &bs {
                        grew |= nd.insert(a & b);
                    }
                }
                if !grew {
                    break;
                }
            },
            CKIntBis => {
                let meet = nb.meet(full);
                for a in nd.iter().collect::<Vec<_>>() {
                    nd.insert(a & meet);
                }
            }
        }
    }
    let changed = nb != m.nbox[w] || nd != m.ndiam[w];
    m.nbox[w] = nb;
    m.ndiam[w] = nd;
    changed
}

fn monotonise(m: &mut NbModel) -> bool {
    let mut changed = false;
    for w in 0..m.size() {
        for v in super::members(m.up[w]) {
            if v == w {
                continue;
            }
            let nb: Family = m.nbox[w];
            changed |= m.nbox[v].union_with(&nb);
            let nd: Family = m.ndiam[v];
            changed |= m.ndiam[w].union_with(&nd);
        }
    }
    changed
}

/// Least extension of the neighbourhoods satisfying (hp) and `cs`.
///
/// Every condition is a Horn closure, so the fixpoint is contained in any
/// model of `cs` that contains the starting neighbourhoods.
pub fn saturate(m: &mut NbModel, cs: &Conditions) {
    loop {
        let mut changed = monotonise(m);
        for w in 0..m.size() {
            changed |= close_world(m, w, cs);
        }
        if !changed {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{check_frame, FrameCondition};
    use super::*;

    #[test]
    fn saturation_meets_every_condition() {
        let all: Conditions = FrameCondition::ALL.into_iter().collect();
        let mut m = NbModel::discrete(3);
        m.up[0] = 0b111;
        m.nbox[0].insert(0b011);
        m.nbox[2].insert(0b100);
        m.ndiam[1].insert(0b001);
        saturate(&mut m, &all);
        assert!(check_frame(&m, &all).is_empty());
        assert!(m.base_violations().is_empty());
    }

    #[test]
    fn saturation_is_least() {
        let cs: Conditions = [FrameCondition::WInt1].into_iter().collect();
        let mut m = NbModel::discrete(2);
        m.nbox[0].insert(0b01);
        saturate(&mut m, &cs);
        assert_eq!(m.ndiam[0].iter().collect::<Vec<_>>(), vec![0b01]);
        assert!(m.ndiam[1].is_empty());
    }
}
