int sum_range(int lo, int hi) {
  int s = 0;
  int i;
  lo = lo & 15;
  hi = hi & 31;
  for (i = lo; i < hi; i++) {
    s += i * 2;
  }
  return s;
}
