//! Flat-tuple labels.
//!
//! Every element of a level set carries a string label that reads as a flat
//! tuple of atoms: `()` is the empty tuple, `(a,b,c)` has three atoms and a
//! bare `a` is a one-tuple. Concatenating tuples of tuples yields a flat
//! tuple again, so `Mᵃ × Mᵇ` and `M^{a+b}` have literally the same labels.
//!
//! Atoms are nonempty, bracket-balanced over `()` and `<>`, and contain no
//! comma outside brackets. Pair labels `<x|y>` built by products are atoms.

/// Splits `label` into atoms.
pub fn parse_flat(label: &str) -> Vec<&str> {
    if label == "()" {
        return Vec::new();
    }
    if let Some(inner) = label.strip_prefix('(').and_then(|l| l.strip_suffix(')')) {
        if closes_at_end(label) {
            return split_top_level(inner);
        }
    }
    vec![label]
}

/// Joins atoms into a flat-tuple label; inverse of [`parse_flat`] on atoms.
pub fn render_flat<S: AsRef<str>>(atoms: &[S]) -> String {
    match atoms {
        [] => "()".to_string(),
        [one] if !one.as_ref().starts_with('(') => one.as_ref().to_string(),
        _ => {
            let mut out = String::from("(");
            for (k, a) in atoms.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(a.as_ref());
            }
            out.push(')');
            out
        }
    }
}

/// Concatenation of the flat tuples named by `labels`.
pub fn concat_flat<S: AsRef<str>>(labels: &[S]) -> String {
    let atoms: Vec<&str> = labels.iter().flat_map(|l| parse_flat(l.as_ref())).collect();
    render_flat(&atoms)
}

pub fn is_atom(s: &str) -> bool {
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return false;
    }
    let mut depth: i64 = 0;
    for c in s.chars() {
        match c {
            '(' | '<' => depth += 1,
            ')' | '>' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            ',' if depth == 0 => return false,
            _ => {}
        }
    }
    depth == 0 && s != "()"
}

pub fn pair_label(left: &str, right: &str) -> String {
    format!("<{left}|{right}>")
}

fn closes_at_end(label: &str) -> bool {
    let mut depth = 0usize;
    for (k, c) in label.char_indices() {
        match c {
            '(' | '<' => depth += 1,
            ')' | '>' => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    return k + c.len_utf8() == label.len();
                }
            }
            _ => {}
        }
    }
    false
}

fn split_top_level(inner: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (k, c) in inner.char_indices() {
        match c {
            '(' | '<' => depth += 1,
            ')' | '>' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&inner[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&inner[start..]);
    out
}
