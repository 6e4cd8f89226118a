use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Ring, RingSpec, RingValue, ScalarError};

pub(super) fn parse_spec(s: &str) -> Result<RingSpec, ScalarError> {
    let bad = || ScalarError::BadSpec(s.to_string());
    match s.trim() {
        "Z" => Ok(RingSpec::Integers),
        "Q" => Ok(RingSpec::Rationals),
        t if t.starts_with("zmod:") => {
            let n: u64 = t["zmod:".len()..].parse().map_err(|_| bad())?;
            Ok(RingSpec::Modular(n))
        }
        t if t.starts_with("poly:") => {
            let rest = &t["poly:".len()..];
            let (base, vars) = rest.rsplit_once(':').ok_or_else(bad)?;
            let vars = vars.split(',').map(|v| v.trim().to_string()).collect();
            Ok(RingSpec::Polynomial { base: Box::new(parse_spec(base)?), vars })
        }
        _ => Err(bad()),
    }
}

pub(super) fn parse_value(ring: &Ring, s: &str) -> Result<RingValue, ScalarError> {
    let bad = || ScalarError::BadValue { value: s.to_string(), ring: ring.to_string() };
    let t = s.trim();
    let (negate, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let value = if let Some(v) = ring.var_named(body) {
        v
    } else if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        ring.from_rational(&BigRational::new(n, d)).map_err(|_| bad())?
    } else {
        let n: BigInt = body.parse().map_err(|_| bad())?;
        ring.from_int(&n)
    };
    Ok(if negate { value.neg() } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_specs() {
        assert_eq!(parse_spec("Z").unwrap(), RingSpec::Integers);
        assert_eq!(parse_spec("Q").unwrap(), RingSpec::Rationals);
        assert_eq!(parse_spec("zmod:7").unwrap(), RingSpec::Modular(7));
        let p = parse_spec("poly:Q:r,s").unwrap();
        assert_eq!(p.to_string(), "poly:Q:r,s");
        let nested = parse_spec("poly:zmod:5:x").unwrap();
        assert_eq!(nested.to_string(), "poly:zmod:5:x");
        assert!(parse_spec("R").is_err());
        assert!(parse_spec("zmod:x").is_err());
    }

    #[test]
    fn parses_values() {
        let ring = Ring::parse("poly:Q:r,s").unwrap();
        assert_eq!(parse_value(&ring, "-r").unwrap(), ring.var(0).unwrap().neg());
        assert_eq!(parse_value(&ring, "3").unwrap(), ring.from_i64(3));
        let z7 = Ring::parse("zmod:7").unwrap();
        assert_eq!(parse_value(&z7, "1/3").unwrap().residue(), Some(5));
        assert!(parse_value(&Ring::integers(), "1/2").is_err());
        assert!(parse_value(&Ring::integers(), "x").is_err());
    }
}
