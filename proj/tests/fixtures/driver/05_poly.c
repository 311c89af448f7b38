long poly(long a, long b, long c) {
  long t;
  t = a * a + b * c - a;
  t += b * 3;
  if (t <= 0) {
    t = -t;
  }
  return t;
}
