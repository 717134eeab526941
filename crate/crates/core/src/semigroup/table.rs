//! Cayley tables and the plain-text table file format.
//!
//! ```text
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! identity=0
//! ```

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<usize>,
}

/// Parsed table file: the table plus optional declared identity and zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyFile {
    pub table: CayleyTable,
    pub identity: Option<usize>,
    pub zero: Option<usize>,
}

impl CayleyTable {
    pub fn new(order: usize, cells: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptySemigroup);
        }
        if cells.len() != order * order {
            return Err(Error::Invalid(format!(
                "table of order {order} needs {} cells, got {}",
                order * order,
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&c| c >= order) {
            return Err(Error::IndexOutOfRange { index: bad, order });
        }
        Ok(CayleyTable { order, cells })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let cells = (0..order)
            .flat_map(|i| (0..order).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        CayleyTable::new(order, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.order + b]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn set(&mut self, a: usize, b: usize, value: usize) {
        assert!(value < self.order);
        self.cells[a * self.order + b] = value;
    }

    pub fn find_identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| (0..self.order).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }

    pub fn find_zero(&self) -> Option<usize> {
        (0..self.order).find(|&z| (0..self.order).all(|x| self.get(z, x) == z && self.get(x, z) == z))
    }

    /// First triple (in lexicographic order) violating associativity.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Relabel by `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        let n = self.order;
        let mut cells = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[perm[a] * n + perm[b]] = perm[self.get(a, b)];
            }
        }
        CayleyTable { order: n, cells }
    }

    pub fn to_text(&self, identity: Option<usize>, zero: Option<usize>) -> String {
        let mut out = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.get(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        if let Some(e) = identity {
            out.push_str(&format!("identity={e}\n"));
        }
        if let Some(z) = zero {
            out.push_str(&format!("zero={z}\n"));
        }
        out
    }
}

fn parse_index(tok: &str, line: usize, column: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, column, format!("expected a non-negative integer, found `{tok}`")))
}

/// Parse the table file format. Blank lines and `#` comments are skipped.
pub fn parse_cayley(text: &str) -> Result<CayleyFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first_no, first) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing order line"))?;
    let order = parse_index(first, first_no, 1)?;
    if order == 0 {
        return Err(Error::EmptySemigroup);
    }
    let mut cells = Vec::with_capacity(order * order);
    for row in 0..order {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(first_no + row + 1, 1, format!("missing row {row}")))?;
        let mut count = 0;
        let mut column = 1;
        for tok in line.split_whitespace() {
            let v = parse_index(tok, no, column)?;
            if v >= order {
                return Err(Error::parse(
                    no,
                    column,
                    format!("entry {v} out of range for order {order}"),
                ));
            }
            cells.push(v);
            count += 1;
            column += tok.len() + 1;
        }
        if count != order {
            return Err(Error::parse(
                no,
                1,
                format!("row {row} has {count} entries, expected {order}"),
            ));
        }
    }
    let mut identity = None;
    let mut zero = None;
    for (no, line) in lines {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(no, 1, format!("unexpected trailing line `{line}`")))?;
        let v = parse_index(value.trim(), no, key.len() + 2)?;
        if v >= order {
            return Err(Error::parse(no, key.len() + 2, format!("element {v} out of range")));
        }
        match key.trim() {
            "identity" => identity = Some(v),
            "zero" => zero = Some(v),
            other => return Err(Error::parse(no, 1, format!("unknown metadata key `{other}`"))),
        }
    }
    Ok(CayleyFile {
        table: CayleyTable::new(order, cells)?,
        identity,
        zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_metadata() {
        let f = parse_cayley("3\n0 1 2\n1 2 0\n2 0 1\nidentity=0\n").unwrap();
        assert_eq!(f.table.order(), 3);
        assert_eq!(f.table.get(2, 2), 1);
        assert_eq!(f.identity, Some(0));
        assert_eq!(f.zero, None);
    }

    #[test]
    fn round_trips_text() {
        let t = CayleyTable::from_fn(4, |a, b| (a + b) % 4).unwrap();
        let text = t.to_text(Some(0), None);
        let f = parse_cayley(&text).unwrap();
        assert_eq!(f.table, t);
        assert_eq!(f.identity, Some(0));
    }

    #[test]
    fn positional_errors() {
        match parse_cayley("2\n0 1\n1 x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
        match parse_cayley("2\n0 1\n1 5\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_cayley("2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_cayley("0\n"), Err(Error::EmptySemigroup)));
    }

    #[test]
    fn finds_associativity_violation() {
        // rows [0,0],[1,0]: (1*0)*1 = 1*1 = 0 but 1*(0*1) = 1*0 = 1
        let t = CayleyTable::new(2, vec![0, 0, 1, 0]).unwrap();
        assert_eq!(t.associativity_violation(), Some((1, 0, 1)));
        let c = CayleyTable::from_fn(5, |a, b| (a + b) % 5).unwrap();
        assert_eq!(c.associativity_violation(), None);
    }
}
