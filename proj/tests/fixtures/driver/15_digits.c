int digits(unsigned long v) {
  int n = 1;
  while (v >= 10ul) {
    v /= 10ul;
    n++;
  }
  return n;
}
