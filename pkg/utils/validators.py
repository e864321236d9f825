"""
SnCharLab Input Validators

Validation functions for user input and service preconditions.
Each validator returns (is_valid, error_message); ensure_valid() turns
a failed result into ValueError.
"""

from typing import Iterable, Tuple

from sympy import isprime


def validate_non_negative(value: int, field_name: str = "n") -> Tuple[bool, str]:
    """
    Validate that an integer is at least 0.

    Args:
        value: Value to validate
        field_name: Name of the field for error message

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(value, int) or isinstance(value, bool):
        return False, f"{field_name} must be an integer"

    if value < 0:
        return False, f"{field_name} must be non-negative, got {value}"

    return True, ""


def validate_positive(value: int, field_name: str = "t") -> Tuple[bool, str]:
    """
    Validate that an integer is at least 1.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(value, int) or isinstance(value, bool):
        return False, f"{field_name} must be an integer"

    if value < 1:
        return False, f"{field_name} must be positive, got {value}"

    return True, ""


def validate_prime(p: int) -> Tuple[bool, str]:
    """
    Validate that p is a prime number.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(p, int) or isinstance(p, bool):
        return False, "Modulus must be an integer"

    if not isprime(p):
        return False, f"Modulus must be prime, got {p}"

    return True, ""


def validate_coprime(k: int, p: int) -> Tuple[bool, str]:
    """
    Validate that k is positive and not divisible by the prime p.

    Returns:
        Tuple of (is_valid, error_message)
    """
    is_valid, error = validate_positive(k, "k")
    if not is_valid:
        return is_valid, error

    if k % p == 0:
        return False, f"k must be coprime to p: {k} is divisible by {p}"

    return True, ""


def validate_distinct(values: Iterable[int], field_name: str = "ks") -> Tuple[bool, str]:
    """
    Validate that a sequence has no repeated entries.

    Returns:
        Tuple of (is_valid, error_message)
    """
    values = list(values)
    if len(set(values)) != len(values):
        return False, f"{field_name} must be distinct, got {values}"

    return True, ""


def validate_same_size(first_size: int, second_size: int) -> Tuple[bool, str]:
    """
    Validate that a character and a cycle type partition the same n.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if first_size != second_size:
        return False, f"Size mismatch: |lambda| = {first_size}, |mu| = {second_size}"

    return True, ""


def ensure_valid(result: Tuple[bool, str]) -> None:
    """
    Raise ValueError for a failed validation result.

    Args:
        result: Tuple returned by one of the validators

    Raises:
        ValueError: If the result is invalid
    """
    is_valid, error = result
    if not is_valid:
        raise ValueError(error)
