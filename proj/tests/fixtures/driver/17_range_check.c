int range_check(int v, int lo, int hi) {
  if (lo <= v && v <= hi) {
    return 1;
  } else {
    return 0;
  }
}
