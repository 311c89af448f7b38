unsigned compound_ops(unsigned h, unsigned k) {
  unsigned t;
  h ^= k;
  h *= 31u;
  t = h >> 7;
  h += t;
  k = h++ + --t;
  return h ^ k ^ t;
}
