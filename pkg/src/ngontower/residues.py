"""Modular arithmetic kernel: doubling orbits, wrap-around indexing, pair numbering.

Everything downstream works with element degrees k (the exponent of z^k on the
unit circle) and pair numbers min(k, n-k).  All indices are 1-based to mirror
the published derivations.
"""

from dataclasses import dataclass

KNOWN_FERMAT_PRIMES = (3, 5, 17, 257, 65537)


class InvalidN(ValueError):
    """n is not of the Fermat shape 2^(2^nu) + 1, or fails the primality check."""


def rho(k: int, m: int) -> int:
    """Wrap-around remainder: m when m divides k, else k mod m.  Result in [1, m]."""
    if k <= 0 or m <= 0:
        raise ValueError(f"rho requires positive arguments, got k={k}, m={m}")
    r = k % m
    return m if r == 0 else r


def pair_of(e: int, n: int) -> int:
    """Pair number of the element degree e: min(e, n-e)."""
    if not 1 <= e <= n - 1:
        raise ValueError(f"element degree {e} out of range [1, {n - 1}]")
    return min(e, n - e)


def doubling_orbit(start: int, n: int) -> tuple[int, ...]:
    """Orbit of an element degree under doubling mod n, up to first repetition.

    For Fermat-prime n the orbit always has length 2^(nu+1) and its m-th entry
    is inverse (mod n) to the (2^nu + m)-th.
    """
    if not 1 <= start <= n - 1:
        raise ValueError(f"start degree {start} out of range [1, {n - 1}]")
    orbit = [start]
    cur = (2 * start) % n
    while cur != start:
        orbit.append(cur)
        cur = (2 * cur) % n
    return tuple(orbit)


def pair_orbit(start: int, n: int) -> tuple[int, ...]:
    """Orbit of a pair number under doubling: r -> pair_of(2r mod n).

    Equals pair_of applied to the first half of the corresponding doubling
    orbit; length 2^nu.
    """
    if not 1 <= start <= (n - 1) // 2:
        raise ValueError(f"pair number {start} out of range [1, {(n - 1) // 2}]")
    orbit = [start]
    cur = pair_of((2 * start) % n, n)
    while cur != start:
        orbit.append(cur)
        cur = pair_of((2 * cur) % n, n)
    return tuple(orbit)


@dataclass(frozen=True)
class FermatParams:
    """Derived constants for a Fermat prime n = 2^(2^nu) + 1.

    ng is the number of invariant sets, npairs the number of inverse pairs.
    It always holds ng * orbit_len = n - 1 and npairs = ng * 2^nu.
    """

    nu: int
    n: int
    ng: int
    npairs: int
    orbit_len: int

    @classmethod
    def from_n(cls, n: int, assume_prime: bool = False) -> "FermatParams":
        """Validate n and derive the constants.

        Primality is checked by trial division for n <= 65537; larger n must be
        asserted prime by the caller via assume_prime (the shape check is
        always enforced).
        """
        if n < 3:
            raise InvalidN(f"n={n} is too small")
        nu = 0
        while (1 << (1 << nu)) + 1 < n:
            nu += 1
        if (1 << (1 << nu)) + 1 != n:
            raise InvalidN(f"n={n} is not of the form 2^(2^nu) + 1")
        if n <= 65537:
            if any(n % d == 0 for d in range(2, int(n**0.5) + 1)):
                raise InvalidN(f"n={n} is not prime")
        elif not assume_prime:
            raise InvalidN(
                f"n={n} exceeds the tested range; pass assume_prime for asserted Fermat primes"
            )
        orbit_len = 1 << (nu + 1)
        ng = (n - 1) // orbit_len
        return cls(nu=nu, n=n, ng=ng, npairs=(n - 1) // 2, orbit_len=orbit_len)
