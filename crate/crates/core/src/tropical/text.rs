//! Text syntax for series: `min{2a+b, 3b+1/2}`, a single monomial, or `inf`.

use std::str::FromStr;

use super::{MultiDegree, SeriesError, TropSeries, TropValue};

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn parse_monomial(src: &str) -> Result<(MultiDegree, TropValue), SeriesError> {
    let bad = || SeriesError::Parse(format!("bad monomial `{src}`"));
    let mut deg = MultiDegree::one();
    let mut coeff = TropValue::zero();
    for term in src.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(bad());
        }
        if let Ok(c) = term.parse::<TropValue>() {
            coeff = coeff.plus(&c);
            continue;
        }
        match term.find(is_ident_start) {
            Some(i) => {
                let (k, name) = term.split_at(i);
                if !name.chars().all(is_ident_char) {
                    return Err(bad());
                }
                let k: u32 = if k.trim().is_empty() { 1 } else { k.trim().parse().map_err(|_| bad())? };
                deg.set(name, deg.get(name) + k);
            }
            None => return Err(bad()),
        }
    }
    Ok((deg, coeff))
}

impl FromStr for TropSeries {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(TropSeries::inf());
        }
        let body = match s.strip_prefix("min") {
            Some(rest) => rest
                .trim()
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| SeriesError::Parse(format!("unbalanced braces in `{s}`")))?,
            None => s,
        };
        let mut out = TropSeries::inf();
        for mono in body.split(',').map(str::trim).filter(|m| !m.is_empty()) {
            let (d, c) = parse_monomial(mono)?;
            out.insert(d, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for src in ["min{2a+b, 3b+1/2}", "a", "inf", "3", "min{x+1, 3}"] {
            let f: TropSeries = src.parse().unwrap();
            assert_eq!(f.to_string().parse::<TropSeries>().unwrap(), f);
        }
    }

    #[test]
    fn components() {
        let f: TropSeries = "2a+b+1/2".parse().unwrap();
        let (d, c) = f.iter().next().unwrap();
        assert_eq!(d, &MultiDegree::from_pairs([("a", 2), ("b", 1)]));
        assert_eq!(c, &TropValue::ratio(1, 2));
        assert!("min{2a".parse::<TropSeries>().is_err());
        assert!("a++b".parse::<TropSeries>().is_err());
    }
}
