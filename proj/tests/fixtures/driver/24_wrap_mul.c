unsigned int wrap_mul(unsigned int a, unsigned int b, unsigned int c) {
  unsigned int r;
  r = a * b + c * 7u;
  r -= a ^ c;
  if (r < a) {
    r = r + 1u;
  }
  return r;
}
