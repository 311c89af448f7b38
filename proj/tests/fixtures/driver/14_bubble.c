void bubble(int *a) {
  for (int i = 0; i < 8; i++) {
    for (int j = 0; j + 1 < 8 - i; j++) {
      if (a[j] > a[j + 1]) {
        int t = a[j];
        a[j] = a[j + 1];
        a[j + 1] = t;
      }
    }
  }
}
