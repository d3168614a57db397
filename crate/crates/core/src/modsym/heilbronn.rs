//! Merel's Heilbronn matrices of determinant `l`.

/// All `[a, b, c, d]` with `ad - bc = l`, `a > b >= 0`, `d > c >= 0`.
pub fn heilbronn_merel(l: u64) -> Vec<[i64; 4]> {
    let l = l as i64;
    let mut out = Vec::new();
    for a in 1..=l {
        for b in 0..a {
            // d > c >= 0 and ad = l + bc  =>  c (a - b) < l
            let mut c = 0;
            while c * (a - b) < l {
                let num = l + b * c;
                if num % a == 0 {
                    let d = num / a;
                    if d > c {
                        out.push([a, b, c, d]);
                    }
                }
                c += 1;
            }
        }
    }
    out
}
