use finsemi::sk::Variant;
use finsemi::words::Word;
use rand::Rng;

const A: u8 = 0;
const B: u8 = 1;

fn pow(l: u8, e: usize) -> Word {
    vec![l; e]
}

fn cat(parts: &[Word]) -> Word {
    parts.concat()
}

/// Oriented rules; `None` on the right means the word becomes zero.
pub fn rules(k: usize, variant: Variant) -> Vec<(Word, Option<Word>)> {
    let mut r = Vec::new();
    match variant {
        Variant::Sk => {
            r.push((pow(A, k + 1), Some(pow(A, k))));
            r.push((pow(B, k + 1), Some(pow(B, k))));
            r.push((cat(&[pow(A, k), pow(B, k), pow(A, k)]), Some(pow(A, k))));
            r.push((cat(&[pow(B, k), pow(A, k), pow(B, k)]), Some(pow(B, k))));
            for n in 1..k {
                r.push((cat(&[pow(A, n), pow(B, n), vec![A]]), None));
                r.push((cat(&[pow(B, n), pow(A, n), vec![B]]), None));
            }
        }
        Variant::Skp(p) => {
            r.push((vec![A, A], None));
            r.push((pow(B, k + 1), Some(pow(B, k))));
            let mut lhs = pow(B, k);
            for _ in 0..p {
                lhs.push(A);
                lhs.extend(pow(B, k));
            }
            r.push((lhs, Some(pow(B, k))));
            for n in 1..k {
                r.push((cat(&[pow(B, n), vec![A], pow(B, n), vec![A]]), None));
            }
        }
    }
    r
}

/// Applies randomly chosen rule instances until none applies.
pub fn rewrite(w: &[u8], rules: &[(Word, Option<Word>)], rng: &mut impl Rng) -> Option<Word> {
    let mut w = w.to_vec();
    loop {
        let mut sites = Vec::new();
        for (ri, (lhs, _)) in rules.iter().enumerate() {
            for pos in 0..=w.len().saturating_sub(lhs.len()) {
                if w.len() >= lhs.len() && w[pos..pos + lhs.len()] == lhs[..] {
                    sites.push((ri, pos));
                }
            }
        }
        if sites.is_empty() {
            return Some(w);
        }
        let (ri, pos) = sites[rng.gen_range(0..sites.len())];
        let (lhs, rhs) = &rules[ri];
        let rhs = rhs.as_ref()?;
        w.splice(pos..pos + lhs.len(), rhs.iter().copied());
    }
}
