//! Brute-force reference aggregator, written without reference to the library.
//!
//! Tabulates each alternative's score histogram by direct counting, then
//! enumerates every ordering of the alternatives and keeps the one in which
//! each neighbour pair respects the comparison chain (modal score, total
//! score, mean closeness, index).

pub struct OracleOutcome {
    pub modal: Vec<usize>,
    pub histograms: Vec<Vec<usize>>,
    pub positions: Vec<usize>,
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.clone();
        let head = rest.remove(k);
        for mut tail in permutations(rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

pub fn aggregate(rank_rows: &[Vec<usize>], closeness_rows: &[Vec<f64>]) -> OracleOutcome {
    let m = rank_rows[0].len();
    let t = rank_rows.len();
    let mut histograms = vec![vec![0usize; m]; m];
    let mut modal = vec![0usize; m];
    let mut totals = vec![0usize; m];
    let mut mean_xi = vec![0.0f64; m];
    for a in 0..m {
        for s in 1..=m {
            histograms[a][s - 1] = rank_rows.iter().filter(|row| m + 1 - row[a] == s).count();
        }
        let mut best = 0;
        for s in (1..=m).rev() {
            if histograms[a][s - 1] > best {
                best = histograms[a][s - 1];
                modal[a] = s;
            }
        }
        totals[a] = rank_rows.iter().map(|row| m + 1 - row[a]).sum();
        mean_xi[a] = closeness_rows.iter().map(|row| row[a]).sum::<f64>() / t as f64;
    }

    let precedes = |a: usize, b: usize| -> bool {
        if modal[a] != modal[b] {
            return modal[a] > modal[b];
        }
        if totals[a] != totals[b] {
            return totals[a] > totals[b];
        }
        if mean_xi[a] != mean_xi[b] {
            return mean_xi[a] > mean_xi[b];
        }
        a < b
    };
    let valid: Vec<Vec<usize>> = permutations((0..m).collect())
        .into_iter()
        .filter(|p| p.windows(2).all(|w| precedes(w[0], w[1])))
        .collect();
    assert_eq!(valid.len(), 1, "comparison chain must be total");
    let mut positions = vec![0; m];
    for (pos, &a) in valid[0].iter().enumerate() {
        positions[a] = pos + 1;
    }
    OracleOutcome {
        modal,
        histograms,
        positions,
    }
}
