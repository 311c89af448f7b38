int classify(int x, int y) {
  int r = 0;
  if (x < 0 || y < 0) {
    r = -1;
  } else {
    r = 1;
  }
  if (x == y) {
    r += 10;
  }
  return r;
}
