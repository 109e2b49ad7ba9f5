use minterval::Interval;

/// Up to `k` pairwise disjoint witnesses, chosen shortest first (leftmost
/// among equal lengths) and returned in natural order.
pub fn snippets(witnesses: &[Interval], k: usize) -> Vec<Interval> {
    let mut by_length: Vec<&Interval> = witnesses.iter().collect();
    by_length.sort_by_key(|iv| (iv.length(), iv.left()));
    let mut chosen: Vec<Interval> = Vec::with_capacity(k);
    for iv in by_length {
        if chosen.len() == k {
            break;
        }
        if chosen.iter().all(|c| !c.overlaps(iv)) {
            chosen.push(*iv);
        }
    }
    chosen.sort_by_key(|iv| iv.left());
    chosen
}
