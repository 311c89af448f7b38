int clamp_sum(int a, int b, int c) {
  int x;
  x = a + b * c;
  if (x > 100) {
    x = 100;
  } else {
    x = x + 1;
  }
  return x;
}
