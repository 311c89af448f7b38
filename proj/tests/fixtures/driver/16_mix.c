int mix(int a, int b, int c, int d) {
  int x = 0;
  int y;
  y = a - b + c * d;
  x = y * 2 + a;
  if (x != y || a == 0) {
    x -= c;
  } else {
    x += d;
  }
  return x + y;
}
