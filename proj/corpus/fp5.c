// Stand-in case: nested guards that contradict each other.
int main() {
  int size = 100;
  int arr[size];

#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 99; i++) {
    if (i % 2 == 0) {
      if (i % 2 == 1) {
        arr[0] = i;
      }
    }
  }
}
