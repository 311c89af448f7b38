void fill(int *a, int v) {
  int i = 0;
  while (i < 8) {
    a[i] = v + i;
    i += 1;
  }
}
