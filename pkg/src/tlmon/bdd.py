"""Hash-consed reduced ordered BDD kernel.

Nodes are integers: 0 is FALSE, 1 is TRUE, higher ids index the node
store.  Each internal node is (level, low, high); levels strictly
increase from root to leaves.  The unique table guarantees that
logically equivalent functions over the same order share one node.
"""

FALSE = 0
TRUE = 1


class BddKernel:
    def __init__(self, bit_count):
        self.bit_count = bit_count
        # id -> (level, low, high); two placeholders for the terminals
        self._nodes = [None, None]
        self._unique = {}
        self._cache = {}

    def node_count(self):
        return len(self._nodes)

    def level(self, ref):
        if ref <= TRUE:
            return self.bit_count
        return self._nodes[ref][0]

    def cofactors(self, ref, level):
        if ref <= TRUE or self._nodes[ref][0] != level:
            return ref, ref
        return self._nodes[ref][1], self._nodes[ref][2]

    def make(self, level, low, high):
        if low == high:
            return low
        key = (level, low, high)
        ref = self._unique.get(key)
        if ref is None:
            self._nodes.append(key)
            ref = len(self._nodes) - 1
            self._unique[key] = ref
        return ref

    def var(self, level):
        """Single-bit function: true iff the bit at `level` is 1."""
        return self.make(level, FALSE, TRUE)

    def apply_and(self, a, b):
        if a == FALSE or b == FALSE:
            return FALSE
        if a == TRUE:
            return b
        if b == TRUE or a == b:
            return a
        if a > b:
            a, b = b, a
        key = ("and", a, b)
        out = self._cache.get(key)
        if out is None:
            level = min(self.level(a), self.level(b))
            a0, a1 = self.cofactors(a, level)
            b0, b1 = self.cofactors(b, level)
            out = self.make(level, self.apply_and(a0, b0), self.apply_and(a1, b1))
            self._cache[key] = out
        return out

    def apply_or(self, a, b):
        return self.apply_not(self.apply_and(self.apply_not(a), self.apply_not(b)))

    def apply_not(self, a):
        if a == FALSE:
            return TRUE
        if a == TRUE:
            return FALSE
        key = ("not", a)
        out = self._cache.get(key)
        if out is None:
            level, low, high = self._nodes[a]
            out = self.make(level, self.apply_not(low), self.apply_not(high))
            self._cache[key] = out
        return out

    def apply_ite(self, c, t, e):
        return self.apply_or(self.apply_and(c, t),
                             self.apply_and(self.apply_not(c), e))

    def exists(self, levels, a):
        """Existential quantification over a set of bit levels."""
        if not levels:
            return a
        wanted = frozenset(levels)
        key = ("exists", wanted, a)
        out = self._cache.get(key)
        if out is None:
            out = self._exists(wanted, a)
            self._cache[key] = out
        return out

    def _exists(self, wanted, a):
        if a <= TRUE:
            return a
        level, low, high = self._nodes[a]
        if not any(l >= level for l in wanted):
            return a
        key = ("exists", wanted, a)
        out = self._cache.get(key)
        if out is None:
            lo = self._exists(wanted, low)
            hi = self._exists(wanted, high)
            if level in wanted:
                out = self.apply_or(lo, hi)
            else:
                out = self.make(level, lo, hi)
            self._cache[key] = out
        return out

    def forall(self, levels, a):
        return self.apply_not(self.exists(levels, self.apply_not(a)))

    def equals_value(self, first_bit, bits, index):
        """BDD fixing a contiguous bit range to the binary code of index.

        Bit `first_bit` is the most significant bit of the range.
        """
        ref = TRUE
        for offset in range(bits - 1, -1, -1):
            level = first_bit + offset
            bit = (index >> (bits - 1 - offset)) & 1
            if bit:
                ref = self.make(level, FALSE, ref)
            else:
                ref = self.make(level, ref, FALSE)
        return ref

    def evaluate(self, ref, assignment):
        """Evaluate under a bit assignment: level -> 0/1."""
        while ref > TRUE:
            level, low, high = self._nodes[ref]
            ref = high if assignment.get(level, 0) else low
        return ref == TRUE

    def stats(self):
        return {"nodes": len(self._nodes) - 2, "cache_entries": len(self._cache)}
