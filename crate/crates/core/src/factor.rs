//! Integer factorization helpers: deterministic Miller–Rabin, Brent's
//! variant of Pollard rho, and bounded divisor enumeration.
//!
//! Primality testing is deterministic for inputs below 3.3 * 10^24 via the
//! first thirteen prime witnesses; everything this crate feeds in stays far
//! below that bound.

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

// Shift-and-add multiplication; only hit on the >= 2^64 slow path.
fn mulmod_u128(mut a: u128, mut b: u128, m: u128) -> u128 {
    a %= m;
    let mut acc: u128 = 0;
    while b > 0 {
        if b & 1 == 1 {
            acc = addmod_u128(acc, a, m);
        }
        a = addmod_u128(a, a, m);
        b >>= 1;
    }
    acc
}

fn addmod_u128(a: u128, b: u128, m: u128) -> u128 {
    let (sum, carry) = a.overflowing_add(b);
    if carry || sum >= m {
        sum.wrapping_sub(m)
    } else {
        sum
    }
}

fn powmod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc: u128 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u128(acc, base, m);
        }
        base = mulmod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = powmod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn is_prime(n: u128) -> bool {
    if n < (1 << 64) {
        return is_prime_u64(n as u64);
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = powmod_u128(a as u128, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn brent_rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c: u64 = 1;
    loop {
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let mut x: u64 = 2;
        let mut y: u64 = 2;
        let mut d: u64 = 1;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y) as u128, n as u128) as u64;
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

fn brent_rho_u128(n: u128) -> u128 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c: u128 = 1;
    loop {
        let f = |x: u128| addmod_u128(mulmod_u128(x, x, n), c, n);
        let mut x: u128 = 2;
        let mut y: u128 = 2;
        let mut d: u128 = 1;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 28 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = if n < (1 << 64) {
        brent_rho_u64(n as u64) as u128
    } else {
        brent_rho_u128(n)
    };
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
pub(crate) fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut primes = Vec::new();
    // Strip small primes first so rho only sees hard cofactors.
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    let mut p = 49u128;
    while p * p <= n && p < 2048 {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p += 2;
    }
    if n > 1 {
        factor_into(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// All divisors of `n` that are `<= bound`, sorted ascending.
pub(crate) fn divisors_up_to(n: u128, bound: u128) -> Vec<u128> {
    let factors = factorize(n);
    let mut divs: Vec<u128> = vec![1];
    for (p, e) in factors {
        let prior = divs.len();
        let mut pk: u128 = 1;
        for _ in 0..e {
            match pk.checked_mul(p) {
                Some(next) if next <= bound => pk = next,
                _ => break,
            }
            for i in 0..prior {
                if let Some(d) = divs[i].checked_mul(pk) {
                    if d <= bound {
                        divs.push(d);
                    }
                }
            }
        }
    }
    divs.sort_unstable();
    divs.dedup();
    divs
}

/// Product of the primes dividing `n` to an odd power.
pub(crate) fn square_free_part(n: u128) -> u128 {
    assert!(n >= 1, "square-free part needs a positive integer");
    factorize(n)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .fold(1u128, |acc, (p, _)| acc * p)
}
