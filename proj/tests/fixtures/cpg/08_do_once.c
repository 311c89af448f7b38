int do_once(int n) {
  int r = n;
  {
    int n2 = n * n;
    r = r + n2;
  }
  if (r > 100) {
    return 100;
  } else if (r < -100) {
    return -100;
  }
  return r;
}
