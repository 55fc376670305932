#!/usr/bin/env python3
"""Score every disputed entry of the known-value oracle against exact search."""

import sys

from pdacache.solver import SearchBudget, adjudicate

DISPUTED = [(5, 7, 2), (7, 4, 3)]

if __name__ == "__main__":
    budget = SearchBudget.parse(sys.argv[1] if len(sys.argv) > 1 else "")
    for F, K, Z in DISPUTED:
        print(f"== ({F},{K},{Z})")
        print(adjudicate(F, K, Z, budget).render())
